#include "cli.hpp"

#include "orbitscope/csv.hpp"
#include "orbitscope/education.hpp"
#include "orbitscope/error.hpp"
#include "orbitscope/orbit.hpp"
#include "orbitscope/panel_io.hpp"
#include "orbitscope/render.hpp"
#include "orbitscope/simulate.hpp"
#include "orbitscope/transitions.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <thread>

namespace orbitscope::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw IoError("read error in '" + path + "'");
    return bytes;
}

void write_file(const fs::path& path, const std::string& bytes)
{
    std::error_code ec;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path(), ec);
    if (ec)
        throw IoError("cannot create directory '" + path.parent_path().string() +
                      "': " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("write error in '" + path.string() + "'");
}

/// Records inputs, outputs and parameters of one run.
class RunManifest
{
public:
    explicit RunManifest(const std::vector<std::string>& args) : _args(args) {}

    /// Reads an input file and records its digest.
    std::string input(const std::string& path)
    {
        auto bytes = read_file(path);
        _inputs.push_back({{"path", path}, {"sha256", sha256_hex(bytes)}});
        return bytes;
    }

    void output(const fs::path& path, const std::string& bytes)
    {
        write_file(path, bytes);
        _outputs.push_back({{"path", path.string()}, {"sha256", sha256_hex(bytes)}});
    }

    void seed(std::uint64_t s) { _seed = s; }

    void write(const fs::path& path) const
    {
        nlohmann::json j;
        j["tool"] = "orbitscope";
        j["version"] = kToolVersion;
        j["command"] = _args;
        j["seed"] = _seed ? nlohmann::json(*_seed) : nlohmann::json(nullptr);
        j["inputs"] = _inputs;
        j["outputs"] = _outputs;
        j["timestamp"] = utc_now();
        write_file(path, j.dump(2) + "\n");
    }

private:
    static std::string utc_now()
    {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }

    std::vector<std::string> _args;
    std::optional<std::uint64_t> _seed;
    nlohmann::json _inputs = nlohmann::json::array();
    nlohmann::json _outputs = nlohmann::json::array();
};

std::string pct(double share) { return fmt::format("{:.2f}", 100.0 * share); }

// ----------------------------------------------------------------------------
// orbits

struct OrbitsOptions
{
    std::string panel;
    std::string specs;
    std::string out;
    std::string leading_gap = "reject";
    std::string initial_order;
};

int cmd_orbits(const OrbitsOptions& o, RunManifest& manifest, std::ostream& out)
{
    const auto panel_text = manifest.input(o.panel);
    std::istringstream panel_in(panel_text);
    PanelReadOptions read_options;
    read_options.leading_gap =
        o.leading_gap == "trim" ? LeadingGapPolicy::trim : LeadingGapPolicy::reject;

    PanelDataset panel;
    if (o.specs.empty())
        panel = parse_panel_csv(panel_in, o.panel, read_options);
    else
    {
        std::vector<QuestionSpec> specs;
        if (o.specs == "household")
            specs = household_question_specs();
        else
        {
            std::istringstream specs_in(manifest.input(o.specs));
            specs = parse_specs(specs_in, o.specs);
        }
        panel = parse_panel_csv(panel_in, specs, o.panel, read_options);
    }
    if (panel.subjects.empty())
        throw ValidationError("no subjects");

    const auto pop = population_frequencies(panel.subjects);
    std::vector<Orbit> orbits;
    if (o.initial_order.empty())
        orbits = build_orbits(panel.subjects, pop, thread_limit());
    else
    {
        const auto order = QuestionOrder::parse(o.initial_order);
        orbits.reserve(panel.subjects.size());
        for (const auto& s : panel.subjects)
            orbits.push_back(build_orbit(s, order));
    }

    std::ostringstream orbit_csv;
    write_orbit_csv(orbit_csv, orbits);
    manifest.output(fs::path(o.out) / "orbits.csv", orbit_csv.str());

    const auto shares = pop.event_shares();
    std::ostringstream freq_csv;
    freq_csv << "variable,label,changes,pairs,rate,event_share\n";
    out << "subjects: " << panel.subjects.size() << "\n"
        << "variables: " << panel.variables() << "\n"
        << "population change frequencies:\n";
    for (int i = 0; i < panel.variables(); ++i)
    {
        const auto k = static_cast<std::size_t>(i);
        freq_csv << 'q' << i << ',' << panel.specs[k].label << ',' << pop.changes()[k] << ','
                 << pop.pairs()[k] << ',' << fmt::format("{:.6f}", pop.rate(i)) << ','
                 << fmt::format("{:.6f}", shares[k]) << '\n';
        out << fmt::format("  q{} ({}): {} changes / {} pairs, rate {}%, share of changes {}%\n",
                           i, panel.specs[k].label, pop.changes()[k], pop.pairs()[k],
                           pct(pop.rate(i)), pct(shares[k]));
    }
    manifest.output(fs::path(o.out) / "frequencies.csv", freq_csv.str());
    manifest.write(fs::path(o.out) / "manifest.json");
    return kSuccess;
}

// ----------------------------------------------------------------------------
// stats

struct StatsOptions
{
    std::string orbits;
    std::string groups;
    std::string subset;
    std::string or_pairs;
    std::string first_label;
    std::string out;
    bool exclude_imputed = false;
};

std::vector<Transition> parse_pairs(const std::string& text)
{
    std::vector<Transition> pairs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        auto arrow = item.find("->");
        auto sep_len = std::size_t{2};
        if (arrow == std::string::npos)
        {
            arrow = item.find('-');
            sep_len = 1;
        }
        long long from = 0;
        long long to = 0;
        if (arrow == std::string::npos || !parse_integer(item.substr(0, arrow), from) ||
            !parse_integer(item.substr(arrow + sep_len), to) || from < 1 || to < 1)
            throw ValidationError("--or-pairs entry '" + item + "' must look like 24-23");
        pairs.push_back({static_cast<StateId>(from), static_cast<StateId>(to)});
    }
    return pairs;
}

int cmd_stats(const StatsOptions& o, RunManifest& manifest, std::ostream& out,
              std::ostream& err)
{
    std::istringstream orbit_in(manifest.input(o.orbits));
    const auto orbits = read_orbit_csv(orbit_in, o.orbits);
    if (orbits.empty())
        throw ValidationError("no orbits in '" + o.orbits + "'");
    const int n = orbits.front().variables();

    std::map<std::string, std::vector<Orbit>> groups;
    if (o.groups.empty())
        groups["all"] = orbits;
    else
    {
        std::istringstream groups_in(manifest.input(o.groups));
        const auto labels = parse_groups_csv(groups_in, o.groups);
        std::set<std::string> known;
        for (const auto& orbit : orbits)
            known.insert(orbit.subject_id);
        for (const auto& [subject, label] : labels)
            if (!known.count(subject))
                throw ValidationError("groups file lists unknown subject '" + subject + "'");
        std::size_t unlabelled = 0;
        for (const auto& orbit : orbits)
        {
            auto it = labels.find(orbit.subject_id);
            if (it == labels.end())
                ++unlabelled;
            else
                groups[it->second].push_back(orbit);
        }
        if (unlabelled > 0)
            err << "note: " << unlabelled << " orbit(s) without a group label were excluded\n";
    }

    const std::optional<StateSubset> subset =
        o.subset.empty() ? std::nullopt : std::optional(parse_subset(o.subset, n));
    const StateSubset scope = subset ? *subset : (n == 3 ? subset_l() : StateSubset::all(n));
    const TransitionFilter filter{!o.exclude_imputed};

    std::vector<std::string> labels;
    std::vector<TransitionCounts> tables;
    for (const auto& [label, members] : groups)
    {
        labels.push_back(label);
        tables.push_back(accumulate_transitions(members, label, filter));
    }

    std::vector<TransitionCounts> density;
    out << "orbits: " << orbits.size() << ", variables: " << n << "\n";
    for (const auto& table : tables)
    {
        const auto restricted = restrict(table, subset ? *subset : StateSubset::all(n));
        const auto in_scope = restrict(table, scope);
        out << fmt::format("group {}: {} orbits, {} transitions, {}% within subset {}, "
                           "{}% within odds-ratio scope {}\n",
                           table.label(), table.subjects(), table.total(),
                           pct(restricted.retained_share),
                           subset ? subset->name() : std::string("all"),
                           pct(in_scope.retained_share), scope.name());
        density.push_back(restricted.counts);
    }
    std::ostringstream density_csv;
    write_density_csv(density_csv, density);
    manifest.output(fs::path(o.out) / "density.csv", density_csv.str());

    std::ostringstream or_csv;
    or_csv << "from_id,to_id,first_label,second_label,a,b,c,d,first_share_pct,"
              "second_share_pct,odds_ratio\n";
    if (tables.size() == 2)
    {
        std::size_t first = 0;
        if (!o.first_label.empty())
        {
            auto it = std::find(labels.begin(), labels.end(), o.first_label);
            if (it == labels.end())
                throw ValidationError("--first-label '" + o.first_label + "' is not a group");
            first = static_cast<std::size_t>(it - labels.begin());
        }
        else if (labels[1] == "non-defaulting")
            first = 1;
        const auto& a_table = tables[first];
        const auto& b_table = tables[1 - first];

        std::vector<Transition> pairs;
        if (!o.or_pairs.empty())
            pairs = parse_pairs(o.or_pairs);
        else
        {
            std::set<Transition> seen;
            for (const auto* t : {&a_table, &b_table})
                for (const auto& [key, c] : restrict(*t, scope).counts.entries())
                    seen.insert(key);
            pairs.assign(seen.begin(), seen.end());
        }
        out << fmt::format("odds ratios ({} vs {}, scope {}):\n", a_table.label(),
                           b_table.label(), scope.name());
        for (const auto& p : pairs)
        {
            const auto r = odds_ratio(a_table, b_table, p.from, p.to, scope);
            const auto s = transition_shares(a_table, b_table, p.from, p.to);
            auto opt = [](const std::optional<double>& v, const char* f) {
                return v ? fmt::format(fmt::runtime(f), *v) : std::string();
            };
            or_csv << p.from << ',' << p.to << ',' << csv_field(a_table.label()) << ','
                   << csv_field(b_table.label()) << ',' << r.a << ',' << r.b << ',' << r.c
                   << ',' << r.d << ',' << opt(s.first_percent, "{:.2f}") << ','
                   << opt(s.second_percent, "{:.2f}") << ',' << opt(r.value, "{:.4f}") << '\n';
            out << fmt::format("  {}->{}: a={} b={} c={} d={} shares {}/{} OR {}\n", p.from,
                               p.to, r.a, r.b, r.c, r.d, opt(s.first_percent, "{:.2f}%"),
                               opt(s.second_percent, "{:.2f}%"),
                               r.value ? fmt::format("{:.4f}", *r.value) : "undefined");
        }
    }
    else
        out << "note: odds ratios need exactly two groups; found " << tables.size() << "\n";
    manifest.output(fs::path(o.out) / "odds_ratios.csv", or_csv.str());

    std::ostringstream occupancy_csv;
    write_occupancy_csv(occupancy_csv, occupancy_timeseries(orbits),
                        subset ? &*subset : nullptr);
    manifest.output(fs::path(o.out) / "occupancy.csv", occupancy_csv.str());
    manifest.write(fs::path(o.out) / "manifest.json");
    return kSuccess;
}

// ----------------------------------------------------------------------------
// classify

struct ClassifyOptions
{
    std::string education;
    std::string out;
    int f_threshold = kHouseholdFailureYears;
};

int cmd_classify(const ClassifyOptions& o, RunManifest& manifest, std::ostream& out,
                 std::ostream& err)
{
    if (o.f_threshold < kMinFailureYears || o.f_threshold > kMaxFailureYears)
        throw ValidationError("--f-threshold must lie in [2, 9]");
    std::istringstream in(manifest.input(o.education));
    const auto households = parse_education_csv(in, o.education);
    if (households.empty())
        throw ValidationError("no households in '" + o.education + "'");

    std::ostringstream households_csv;
    std::ostringstream groups_csv;
    households_csv << "household_id,children,defaulting_children,label\n";
    groups_csv << "subject_id,label\n";
    std::size_t defaulting = 0;
    for (const auto& h : households)
    {
        for (const auto& child : h.children)
            for (const auto& w : range_warnings(child, o.f_threshold))
                err << "warning: household '" << h.household_id << "': " << w << "\n";
        const auto result = classify_household(h, o.f_threshold);
        const char* label = result.is_defaulting ? "defaulting" : "non-defaulting";
        defaulting += result.is_defaulting ? 1 : 0;
        households_csv << csv_field(h.household_id) << ',' << h.children.size() << ','
                       << result.defaulting_children << ',' << label << '\n';
        groups_csv << csv_field(h.household_id) << ',' << label << '\n';
    }
    manifest.output(fs::path(o.out) / "households.csv", households_csv.str());
    manifest.output(fs::path(o.out) / "groups.csv", groups_csv.str());

    std::ostringstream dist_csv;
    dist_csv << "f,households,defaulting,fraction\n";
    out << fmt::format("households: {}, defaulting at f = {}: {} ({}%)\n", households.size(),
                       o.f_threshold, defaulting,
                       pct(static_cast<double>(defaulting) /
                           static_cast<double>(households.size())));
    out << "defaulting fraction by f:\n";
    for (const auto& [f, fraction] : default_distribution(households))
    {
        const auto count = static_cast<std::size_t>(
            std::llround(fraction * static_cast<double>(households.size())));
        dist_csv << f << ',' << households.size() << ',' << count << ','
                 << fmt::format("{:.6f}", fraction) << '\n';
        out << fmt::format("  f = {}: {}%\n", f, pct(fraction));
    }
    manifest.output(fs::path(o.out) / "distribution.csv", dist_csv.str());
    manifest.write(fs::path(o.out) / "manifest.json");
    return kSuccess;
}

// ----------------------------------------------------------------------------
// simulate

struct SimulateOptions
{
    std::string preset;
    std::string out;
    std::uint64_t seed = 0;
    int subjects = 0;
    int variables = 0;
    int timesteps = 0;
    std::vector<double> flip;
    double initial_probability = 0.5;
};

int cmd_simulate(const SimulateOptions& o, const CLI::App& app, RunManifest& manifest,
                 std::ostream& out)
{
    SimulationConfig config;
    if (!o.preset.empty())
    {
        auto p = preset(o.preset, o.seed);
        if (!p)
            throw ValidationError("unknown preset '" + o.preset + "' (expected fig3 or fig4)");
        config = *p;
    }
    else
    {
        for (const char* required : {"--subjects", "--variables", "--timesteps", "--flip"})
            if (app.count(required) == 0)
                throw ValidationError(std::string("without --preset, ") + required +
                                      " is required");
    }
    config.seed = o.seed;
    if (app.count("--subjects"))
        config.subjects = o.subjects;
    if (app.count("--variables"))
        config.variables = o.variables;
    if (app.count("--timesteps"))
        config.timesteps = o.timesteps;
    if (app.count("--flip"))
        config.flip_probabilities = o.flip;
    if (app.count("--initial-probability"))
        config.initial_probability = o.initial_probability;

    const auto panel = simulate_population(config);
    std::ostringstream panel_csv;
    write_panel_csv(panel_csv, panel);
    manifest.output(fs::path(o.out) / "panel.csv", panel_csv.str());
    std::ostringstream specs;
    write_specs(specs, panel.specs);
    manifest.output(fs::path(o.out) / "specs.txt", specs.str());
    manifest.seed(o.seed);
    manifest.write(fs::path(o.out) / "manifest.json");
    out << fmt::format("simulated {} subjects x {} timesteps x {} variables (seed {})\n",
                       config.subjects, config.timesteps, config.variables, config.seed);
    return kSuccess;
}

// ----------------------------------------------------------------------------
// render

struct RenderOptions
{
    std::string kind;
    std::string input;
    std::string out;
    std::string subset;
    std::string label;
    std::string labels = "pairs";
    std::string title;
    int variables = 3;
    int width = 800;
    int height = 600;
    double dot_radius = 4.0;
    std::uint64_t min_count = 0;
};

int cmd_render(const RenderOptions& o, RunManifest& manifest, std::ostream& out)
{
    FigureConfig config;
    config.width = o.width;
    config.height = o.height;
    config.dot_radius = o.dot_radius;
    config.min_edge_count = o.min_count;
    config.title = o.title;
    config.axis_labels = o.labels == "ids" ? AxisLabelMode::ids : AxisLabelMode::pairs;

    fs::path target(o.out);
    if (target.extension() != ".svg")
        target /= o.kind + ".svg";

    std::istringstream in(manifest.input(o.input));
    std::string svg;
    if (o.kind == "density")
    {
        const auto tables = read_density_csv(in, o.variables, o.input);
        TransitionCounts counts("all", o.variables);
        bool found = false;
        for (const auto& t : tables)
            if (o.label.empty() || t.label() == o.label)
            {
                counts.merge(t);
                found = true;
            }
        if (!found)
            throw ValidationError(o.label.empty() ? "no transitions in '" + o.input + "'"
                                                  : "label '" + o.label + "' not found");
        const auto subset =
            o.subset.empty() ? StateSubset::all(o.variables) : parse_subset(o.subset, o.variables);
        svg = render_density_graph(counts, subset, config);
    }
    else
    {
        const auto orbits = read_orbit_csv(in, o.input);
        if (orbits.empty())
            throw ValidationError("no orbits in '" + o.input + "'");
        if (!o.subset.empty())
            config.subset = parse_subset(o.subset, orbits.front().variables());
        if (o.kind == "state-space")
            svg = render_state_space(orbits, config);
        else if (o.kind == "time-expanded")
            svg = render_time_expanded(orbits, config);
        else
            svg = render_occupancy(occupancy_timeseries(orbits), config);
    }
    manifest.output(target, svg);
    manifest.write(fs::path(target.string() + ".manifest.json"));
    out << "wrote " << target.string() << "\n";
    return kSuccess;
}

} // namespace

// ----------------------------------------------------------------------------

unsigned thread_limit()
{
    if (const char* env = std::getenv("ORBITSCOPE_THREADS"))
    {
        long long v = 0;
        if (parse_integer(env, v) && v >= 1)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string sha256_hex(const std::string& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw IoError("SHA-256 computation failed");
    std::string hex;
    for (unsigned int k = 0; k < length; ++k)
        hex += fmt::format("{:02x}", digest[k]);
    return hex;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Orbits of binary multivariate longitudinal data", "orbitscope"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    OrbitsOptions orbits_opt;
    auto* orbits = app.add_subcommand("orbits", "Build orbits from a coded panel CSV");
    orbits->add_option("--panel", orbits_opt.panel, "Panel CSV (subject_id,t,q0,...)")
        ->required();
    orbits->add_option("--specs", orbits_opt.specs,
                       "Question specs file, or 'household' for BM/HH/AD coding");
    orbits->add_option("--out", orbits_opt.out, "Output directory")->required();
    orbits->add_option("--leading-gap", orbits_opt.leading_gap,
                       "Subjects with an incomplete first row: reject or trim")
        ->check(CLI::IsMember({"reject", "trim"}));
    orbits->add_option("--initial-order", orbits_opt.initial_order,
                       "Start every orbit from this order (e.g. 2:1:0:3)");

    StatsOptions stats_opt;
    auto* stats = app.add_subcommand("stats", "Transition densities, odds ratios, occupancy");
    stats->add_option("--orbits", stats_opt.orbits, "Orbit CSV")->required();
    stats->add_option("--groups", stats_opt.groups, "Group CSV (subject_id,label)");
    stats->add_option("--subset", stats_opt.subset, "L, H, H8, all or an id list");
    stats->add_option("--or-pairs", stats_opt.or_pairs, "Transitions such as 24-24,23-24");
    stats->add_option("--first-label", stats_opt.first_label,
                      "Group counted as a and b in the odds ratio");
    stats->add_flag("--exclude-imputed", stats_opt.exclude_imputed,
                    "Skip steps whose row was filled by LOCF");
    stats->add_option("--out", stats_opt.out, "Output directory")->required();

    ClassifyOptions classify_opt;
    auto* classify = app.add_subcommand("classify", "Classify households by educational default");
    classify->add_option("--education", classify_opt.education,
                         "Education CSV (household_id,child_id,age,years_completed)")
        ->required();
    classify->add_option("--f-threshold", classify_opt.f_threshold,
                         "Failed years that make a child defaulting")
        ->capture_default_str();
    classify->add_option("--out", classify_opt.out, "Output directory")->required();

    SimulateOptions sim_opt;
    auto* simulate = app.add_subcommand("simulate", "Generate a seeded synthetic panel");
    simulate->add_option("--preset", sim_opt.preset, "fig3 or fig4");
    simulate->add_option("--seed", sim_opt.seed, "Random seed")->capture_default_str();
    simulate->add_option("--subjects", sim_opt.subjects, "Number of subjects K");
    simulate->add_option("--variables", sim_opt.variables, "Number of variables n");
    simulate->add_option("--timesteps", sim_opt.timesteps, "Rows per subject T");
    simulate->add_option("--flip", sim_opt.flip, "Per-variable flip probabilities")
        ->delimiter(',');
    simulate->add_option("--initial-probability", sim_opt.initial_probability,
                         "P(favourable) in the first row");
    simulate->add_option("--out", sim_opt.out, "Output directory")->required();

    RenderOptions render_opt;
    auto* render = app.add_subcommand("render", "Draw an SVG figure");
    render->add_option("--kind", render_opt.kind, "Figure kind")
        ->required()
        ->check(CLI::IsMember({"state-space", "time-expanded", "density", "occupancy"}));
    render->add_option("--input", render_opt.input, "Orbit CSV, or density CSV for 'density'")
        ->required();
    render->add_option("--out", render_opt.out, "SVG path or output directory")->required();
    render->add_option("--subset", render_opt.subset, "L, H, H8, all or an id list");
    render->add_option("--label", render_opt.label, "Density label to draw (default: sum)");
    render->add_option("--variables", render_opt.variables, "n for density input")
        ->capture_default_str();
    render->add_option("--labels", render_opt.labels, "ids or pairs")
        ->check(CLI::IsMember({"ids", "pairs"}));
    render->add_option("--title", render_opt.title, "Figure title");
    render->add_option("--width", render_opt.width)->capture_default_str();
    render->add_option("--height", render_opt.height)->capture_default_str();
    render->add_option("--dot-radius", render_opt.dot_radius)->capture_default_str();
    render->add_option("--min-count", render_opt.min_count,
                       "Omit density edges below this count")
        ->capture_default_str();

    std::vector<std::string> argv_storage{"orbitscope"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage)
        argv.push_back(a.c_str());

    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        if (code == 0)
            return kSuccess;
        err << app.help();
        return kValidationFailure;
    }

    RunManifest manifest(args);
    try
    {
        if (*orbits)
            return cmd_orbits(orbits_opt, manifest, out);
        if (*stats)
            return cmd_stats(stats_opt, manifest, out, err);
        if (*classify)
            return cmd_classify(classify_opt, manifest, out, err);
        if (*simulate)
            return cmd_simulate(sim_opt, *simulate, manifest, out);
        return cmd_render(render_opt, manifest, out);
    }
    catch (const ValidationError& e)
    {
        err << "error: " << e.what() << "\n";
        return kValidationFailure;
    }
    catch (const IoError& e)
    {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    }
}

} // namespace orbitscope::cli
