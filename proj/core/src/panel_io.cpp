#include "orbitscope/panel_io.hpp"

#include "orbitscope/csv.hpp"
#include "orbitscope/error.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace orbitscope {

namespace {

struct PendingRow
{
    std::int64_t t;
    std::size_t line;
    std::vector<Cell> cells;
};

Cell parse_cell(const CsvReader& reader, std::string_view text, const QuestionSpec& spec,
                std::size_t column)
{
    if (text.empty() || text == "NA")
        return kMissing;
    if (text == "0")
        return 0;
    if (text == "1")
        return 1;
    if (text == "yes")
        return code_answer(RawAnswer::yes, spec.polarity);
    if (text == "no")
        return code_answer(RawAnswer::no, spec.polarity);
    reader.fail(column, "malformed cell '" + std::string(text) + "' for question " +
                            spec.label + " (expected 0, 1, yes, no, NA or empty)");
}

PanelDataset parse_panel_body(CsvReader& reader, const std::vector<std::string>& header,
                              std::vector<QuestionSpec> specs, PanelReadOptions options)
{
    const auto n = specs.size();
    if (header.size() != n + 2)
        reader.fail(0, "header has " + std::to_string(header.size()) + " columns, expected " +
                           std::to_string(n + 2) + " (subject_id, t and " +
                           std::to_string(n) + " questions)");
    if (header[0] != "subject_id")
        reader.fail(1, "first header column must be 'subject_id'");
    if (header[1] != "t")
        reader.fail(2, "second header column must be 't'");
    for (std::size_t i = 0; i < n; ++i)
        if (header[i + 2] != "q" + std::to_string(i) && header[i + 2] != specs[i].label)
            reader.fail(i + 3, "question column '" + header[i + 2] + "' matches neither q" +
                                   std::to_string(i) + " nor " + specs[i].label);

    std::map<std::string, std::vector<PendingRow>> rows;
    std::map<std::pair<std::string, std::int64_t>, std::size_t> seen;
    std::vector<std::string> fields;
    while (reader.next(fields))
    {
        if (fields.size() != n + 2)
            reader.fail(0, "row has " + std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(n + 2));
        if (fields[0].empty())
            reader.fail(1, "empty subject_id");
        long long t = 0;
        if (!parse_integer(fields[1], t))
            reader.fail(2, "time label '" + fields[1] + "' is not an integer");
        auto [it, inserted] = seen.emplace(std::pair{fields[0], std::int64_t{t}}, reader.line());
        if (!inserted)
            reader.fail(2, "duplicate row for subject '" + fields[0] + "' at t = " +
                               std::to_string(t) + " (first at line " +
                               std::to_string(it->second) + ")");
        PendingRow row{t, reader.line(), {}};
        row.cells.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            row.cells.push_back(parse_cell(reader, fields[i + 2], specs[i], i + 3));
        rows[fields[0]].push_back(std::move(row));
    }

    PanelDataset panel;
    panel.specs = std::move(specs);
    std::set<std::int64_t> labels;
    std::vector<std::string> rejected;
    std::size_t first_rejected_line = 0;
    for (auto& [subject, subject_rows] : rows)
    {
        std::sort(subject_rows.begin(), subject_rows.end(),
                  [](const PendingRow& a, const PendingRow& b) { return a.t < b.t; });
        std::vector<std::int64_t> times;
        std::vector<Cell> cells;
        for (const auto& r : subject_rows)
        {
            times.push_back(r.t);
            cells.insert(cells.end(), r.cells.begin(), r.cells.end());
        }
        const bool leading_gap = std::find(subject_rows.front().cells.begin(),
                                           subject_rows.front().cells.end(),
                                           kMissing) != subject_rows.front().cells.end();
        if (leading_gap && options.leading_gap == LeadingGapPolicy::reject)
        {
            if (rejected.empty())
                first_rejected_line = subject_rows.front().line;
            rejected.push_back(subject);
            continue;
        }
        try
        {
            panel.subjects.push_back(make_series(subject, std::move(times),
                                                 static_cast<int>(n), std::move(cells),
                                                 options.leading_gap));
        }
        catch (const ValidationError& e)
        {
            throw ParseError(reader.source(), subject_rows.front().line, 0, e.what());
        }
        for (auto t : panel.subjects.back().times())
            labels.insert(t);
    }
    if (!rejected.empty())
    {
        std::string list;
        for (const auto& s : rejected)
            list += (list.empty() ? "" : ", ") + s;
        throw ParseError(reader.source(), first_rejected_line, 0,
                         "missing answers in the first row of subject(s): " + list);
    }
    panel.time_labels.assign(labels.begin(), labels.end());
    return panel;
}

} // namespace

PanelDataset parse_panel_csv(std::istream& in, std::span<const QuestionSpec> specs,
                             const std::string& source, PanelReadOptions options)
{
    validate_question_specs(specs);
    CsvReader reader(in, source);
    std::vector<std::string> header;
    if (!reader.next(header))
        throw ParseError(source, 1, 0, "missing header row");
    return parse_panel_body(reader, header, {specs.begin(), specs.end()}, options);
}

PanelDataset parse_panel_csv(std::istream& in, const std::string& source,
                             PanelReadOptions options)
{
    CsvReader reader(in, source);
    std::vector<std::string> header;
    if (!reader.next(header))
        throw ParseError(source, 1, 0, "missing header row");
    const int n = static_cast<int>(header.size()) - 2;
    if (n < 1 || n > kMaxVariables)
        reader.fail(0, "header must list subject_id, t and 1 to " +
                           std::to_string(kMaxVariables) + " question columns");
    auto specs = generic_question_specs(n);
    for (int i = 0; i < n; ++i)
        if (!header[static_cast<std::size_t>(i) + 2].empty())
            specs[static_cast<std::size_t>(i)].label = header[static_cast<std::size_t>(i) + 2];
    return parse_panel_body(reader, header, std::move(specs), options);
}

void write_panel_csv(std::ostream& out, const PanelDataset& panel)
{
    out << "subject_id,t";
    for (int i = 0; i < panel.variables(); ++i)
        out << ",q" << i;
    out << '\n';
    for (const auto& s : panel.subjects)
    {
        const auto id = csv_field(s.subject_id());
        for (int t = 0; t < s.length(); ++t)
        {
            out << id << ',' << s.times()[static_cast<std::size_t>(t)];
            for (int i = 0; i < s.variables(); ++i)
            {
                out << ',';
                const Cell c = s.cell(t, i);
                if (c != kMissing)
                    out << static_cast<int>(c);
            }
            out << '\n';
        }
    }
}

// ----------------------------------------------------------------------------

void write_orbit_csv(std::ostream& out, std::span<const Orbit> orbits)
{
    out << "subject_id,t,x,y,state_id,imputed\n";
    for (const auto& o : orbits)
    {
        const auto id = csv_field(o.subject_id);
        for (std::size_t t = 0; t < o.states.size(); ++t)
        {
            const auto& s = o.states[t];
            out << id << ',' << o.times[t] << ',' << s.answers().to_string() << ','
                << s.order().to_string() << ',' << s.id() << ','
                << (t < o.imputed.size() && o.imputed[t] ? 1 : 0) << '\n';
        }
    }
}

std::vector<Orbit> read_orbit_csv(std::istream& in, const std::string& source)
{
    CsvReader reader(in, source);
    reader.expect_header({"subject_id", "t", "x", "y", "state_id", "imputed"});

    struct Row
    {
        std::int64_t t;
        std::size_t line;
        State state;
        bool imputed;
    };
    std::vector<std::string> order_of_appearance;
    std::unordered_map<std::string, std::vector<Row>> rows;
    int n = 0;
    std::vector<std::string> fields;
    while (reader.next(fields))
    {
        if (fields.size() != 6)
            reader.fail(0, "row has " + std::to_string(fields.size()) + " fields, expected 6");
        if (fields[0].empty())
            reader.fail(1, "empty subject_id");
        long long t = 0;
        if (!parse_integer(fields[1], t))
            reader.fail(2, "time label '" + fields[1] + "' is not an integer");

        AnswerString x;
        QuestionOrder y;
        try
        {
            x = AnswerString::parse(fields[2]);
        }
        catch (const ValidationError& e)
        {
            reader.fail(3, e.what());
        }
        try
        {
            y = QuestionOrder::parse(fields[3]);
        }
        catch (const ValidationError& e)
        {
            reader.fail(4, e.what());
        }
        if (x.size() != y.size() || x.size() < 1 || x.size() > kMaxVariables)
            reader.fail(4, "x has " + std::to_string(x.size()) + " answers but y has " +
                               std::to_string(y.size()) + " variables");
        if (n == 0)
            n = x.size();
        else if (x.size() != n)
            reader.fail(3, "state has " + std::to_string(x.size()) +
                               " variables, file started with " + std::to_string(n));

        State state(std::move(x), std::move(y));
        long long id = 0;
        if (!parse_integer(fields[4], id) || id < 1)
            reader.fail(5, "state_id '" + fields[4] + "' is not a positive integer");
        if (static_cast<StateId>(id) != state.id())
            reader.fail(5, "state_id " + fields[4] + " does not match " + state.to_string() +
                               " (expected " + std::to_string(state.id()) + ")");
        if (fields[5] != "0" && fields[5] != "1")
            reader.fail(6, "imputed must be 0 or 1");

        auto [it, fresh] = rows.try_emplace(fields[0]);
        if (fresh)
            order_of_appearance.push_back(fields[0]);
        it->second.push_back({t, reader.line(), std::move(state), fields[5] == "1"});
    }

    std::vector<Orbit> orbits;
    orbits.reserve(order_of_appearance.size());
    for (const auto& subject : order_of_appearance)
    {
        auto& subject_rows = rows[subject];
        std::stable_sort(subject_rows.begin(), subject_rows.end(),
                         [](const Row& a, const Row& b) { return a.t < b.t; });
        Orbit o;
        o.subject_id = subject;
        o.frequencies.counts.assign(static_cast<std::size_t>(n), 0);
        for (std::size_t k = 0; k < subject_rows.size(); ++k)
        {
            auto& r = subject_rows[k];
            if (k > 0 && r.t == subject_rows[k - 1].t)
                throw ParseError(source, r.line, 2,
                                 "duplicate row for subject '" + subject + "' at t = " +
                                     std::to_string(r.t));
            if (k > 0)
            {
                const auto before = decode_state(o.states.back());
                const auto after = decode_state(r.state);
                for (int i = 0; i < n; ++i)
                    if (before[i] != after[i])
                        ++o.frequencies.counts[static_cast<std::size_t>(i)];
            }
            o.times.push_back(r.t);
            o.states.push_back(std::move(r.state));
            o.imputed.push_back(r.imputed);
        }
        orbits.push_back(std::move(o));
    }
    return orbits;
}

void write_density_csv(std::ostream& out, std::span<const TransitionCounts> tables)
{
    out << "from_id,to_id,count,label\n";
    for (const auto& table : tables)
    {
        const auto label = csv_field(table.label());
        for (const auto& [key, count] : table.entries())
            out << key.from << ',' << key.to << ',' << count << ',' << label << '\n';
    }
}

std::vector<TransitionCounts> read_density_csv(std::istream& in, int variables,
                                               const std::string& source)
{
    const StateSpace space(variables);
    CsvReader reader(in, source);
    reader.expect_header({"from_id", "to_id", "count", "label"});
    std::vector<TransitionCounts> tables;
    std::map<std::string, std::size_t> index;
    std::set<std::tuple<std::string, StateId, StateId>> seen;
    std::vector<std::string> fields;
    while (reader.next(fields))
    {
        if (fields.size() != 4)
            reader.fail(0, "row has " + std::to_string(fields.size()) + " fields, expected 4");
        long long values[3] = {0, 0, 0};
        for (std::size_t k = 0; k < 3; ++k)
            if (!parse_integer(fields[k], values[k]) || values[k] < (k < 2 ? 1 : 0))
                reader.fail(k + 1, "'" + fields[k] + "' is not a valid " +
                                       (k < 2 ? "state id" : "count"));
        const auto from = static_cast<StateId>(values[0]);
        const auto to = static_cast<StateId>(values[1]);
        if (!space.contains(from))
            reader.fail(1, "state id " + fields[0] + " outside S_" + std::to_string(variables));
        if (!space.contains(to))
            reader.fail(2, "state id " + fields[1] + " outside S_" + std::to_string(variables));
        if (!seen.emplace(fields[3], from, to).second)
            reader.fail(0, "duplicate transition " + fields[0] + "->" + fields[1] +
                               " for label '" + fields[3] + "'");
        auto [it, fresh] = index.try_emplace(fields[3], tables.size());
        if (fresh)
            tables.emplace_back(fields[3], variables);
        tables[it->second].add(from, to, static_cast<std::uint64_t>(values[2]));
    }
    return tables;
}

void write_occupancy_csv(std::ostream& out, const Occupancy& occupancy,
                         const StateSubset* subset)
{
    out << "state_id,t,count\n";
    for (const auto& [id, series] : occupancy.counts)
    {
        if (subset && !subset->contains(id))
            continue;
        for (std::size_t k = 0; k < occupancy.times.size(); ++k)
            out << id << ',' << occupancy.times[k] << ',' << series[k] << '\n';
    }
}

// ----------------------------------------------------------------------------

std::vector<HouseholdRecord> parse_education_csv(std::istream& in, const std::string& source)
{
    CsvReader reader(in, source);
    reader.expect_header({"household_id", "child_id", "age", "years_completed"});
    std::map<std::string, HouseholdRecord> households;
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<std::string> fields;
    while (reader.next(fields))
    {
        if (fields.size() != 4)
            reader.fail(0, "row has " + std::to_string(fields.size()) + " fields, expected 4");
        if (fields[0].empty())
            reader.fail(1, "empty household_id");
        if (fields[1].empty())
            reader.fail(2, "empty child_id");
        long long age = 0;
        long long years = 0;
        if (!parse_integer(fields[2], age) || age < 0 || age > 150)
            reader.fail(3, "age '" + fields[2] + "' is not a whole number of years");
        if (!parse_integer(fields[3], years) || years < 0)
            reader.fail(4, "years_completed '" + fields[3] + "' is not a non-negative integer");
        if (!seen.emplace(fields[0], fields[1]).second)
            reader.fail(2, "duplicate child '" + fields[1] + "' in household '" + fields[0] +
                               "'");
        ChildRecord child{fields[1], static_cast<int>(age), static_cast<int>(years)};
        try
        {
            validate_child(child);
        }
        catch (const ValidationError& e)
        {
            reader.fail(4, e.what());
        }
        auto& h = households[fields[0]];
        h.household_id = fields[0];
        h.children.push_back(std::move(child));
    }
    std::vector<HouseholdRecord> out;
    out.reserve(households.size());
    for (auto& [id, h] : households)
        out.push_back(std::move(h));
    return out;
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

} // namespace

std::vector<QuestionSpec> parse_specs(std::istream& in, const std::string& source)
{
    std::map<int, std::pair<QuestionSpec, std::size_t>> by_index;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        auto body = trim(std::string_view(line).substr(0, line.find('#')));
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(source, line_no, 0, "expected q<i>=<label>,<polarity>");
        const auto key = trim(body.substr(0, eq));
        const auto value = trim(body.substr(eq + 1));
        long long index = -1;
        if (key.size() < 2 || key[0] != 'q' || !parse_integer(key.substr(1), index) ||
            index < 0 || index >= kMaxVariables)
            throw ParseError(source, line_no, 1,
                             "key '" + std::string(key) + "' must be q0..q" +
                                 std::to_string(kMaxVariables - 1));
        const auto comma = value.find(',');
        if (comma == std::string_view::npos)
            throw ParseError(source, line_no, eq + 2, "value must be <label>,<polarity>");
        QuestionSpec spec{static_cast<int>(index), std::string(trim(value.substr(0, comma))),
                          Polarity::yes_is_favourable};
        if (spec.label.empty())
            throw ParseError(source, line_no, eq + 2, "empty label");
        try
        {
            spec.polarity = parse_polarity(trim(value.substr(comma + 1)));
        }
        catch (const ValidationError& e)
        {
            throw ParseError(source, line_no, eq + 2 + comma + 1, e.what());
        }
        if (by_index.count(spec.index))
            throw ParseError(source, line_no, 1,
                             "q" + std::to_string(index) + " defined twice (first at line " +
                                 std::to_string(by_index[spec.index].second) + ")");
        by_index.emplace(spec.index, std::pair{std::move(spec), line_no});
    }
    if (in.bad())
        throw IoError("read error in " + source);
    std::vector<QuestionSpec> specs;
    for (auto& [index, entry] : by_index)
    {
        if (index != static_cast<int>(specs.size()))
            throw ParseError(source, entry.second, 1,
                             "question indices must be contiguous from q0; q" +
                                 std::to_string(specs.size()) + " is missing");
        specs.push_back(std::move(entry.first));
    }
    if (specs.empty())
        throw ParseError(source, line_no, 0, "no questions defined");
    return specs;
}

void write_specs(std::ostream& out, std::span<const QuestionSpec> specs)
{
    for (const auto& s : specs)
        out << 'q' << s.index << '=' << s.label << ',' << to_string(s.polarity) << '\n';
}

std::map<std::string, std::string> parse_groups_csv(std::istream& in, const std::string& source)
{
    CsvReader reader(in, source);
    reader.expect_header({"subject_id", "label"});
    std::map<std::string, std::string> groups;
    std::vector<std::string> fields;
    while (reader.next(fields))
    {
        if (fields.size() != 2)
            reader.fail(0, "row has " + std::to_string(fields.size()) + " fields, expected 2");
        if (fields[0].empty())
            reader.fail(1, "empty subject_id");
        if (fields[1].empty())
            reader.fail(2, "empty label");
        if (!groups.emplace(fields[0], fields[1]).second)
            reader.fail(1, "subject '" + fields[0] + "' listed twice");
    }
    return groups;
}

} // namespace orbitscope
