#include "orbitscope/state_space.hpp"

#include "orbitscope/error.hpp"

#include <algorithm>
#include <charconv>
#include <string>

namespace orbitscope {

namespace {

void check_variable_count(int n)
{
    if (n < 1 || n > kMaxVariables)
        throw ValidationError("variable count must be between 1 and " +
                              std::to_string(kMaxVariables) + ", got " +
                              std::to_string(n));
}

} // namespace

// ----------------------------------------------------------------------------

void validate_question_specs(std::span<const QuestionSpec> specs)
{
    check_variable_count(static_cast<int>(specs.size()));
    for (std::size_t i = 0; i < specs.size(); ++i)
    {
        if (specs[i].index != static_cast<int>(i))
            throw ValidationError("question indices must be 0..n-1 in order; "
                                  "position " + std::to_string(i) +
                                  " holds index " +
                                  std::to_string(specs[i].index));
        if (specs[i].label.empty())
            throw ValidationError("question " + std::to_string(i) +
                                  " has an empty label");
    }
}

std::vector<QuestionSpec> household_question_specs()
{
    return {
        {0, "BM", Polarity::yes_is_favourable},
        {1, "HH", Polarity::yes_is_unfavourable},
        {2, "AD", Polarity::yes_is_unfavourable},
    };
}

std::vector<QuestionSpec> generic_question_specs(int n)
{
    check_variable_count(n);
    std::vector<QuestionSpec> specs;
    for (int i = 0; i < n; ++i)
        specs.push_back({i, "q" + std::to_string(i), Polarity::yes_is_favourable});
    return specs;
}

const char* to_string(Polarity polarity)
{
    return polarity == Polarity::yes_is_favourable ? "yes_is_favourable"
                                                   : "yes_is_unfavourable";
}

Polarity parse_polarity(std::string_view text)
{
    if (text == "yes_is_favourable" || text == "favourable")
        return Polarity::yes_is_favourable;
    if (text == "yes_is_unfavourable" || text == "unfavourable")
        return Polarity::yes_is_unfavourable;
    throw ValidationError("unknown polarity '" + std::string(text) + "'");
}

// ----------------------------------------------------------------------------

AnswerString::AnswerString(std::vector<std::uint8_t> bits) : _bits(std::move(bits))
{
    for (auto b : _bits)
        if (b > 1)
            throw ValidationError("answer bits must be 0 or 1");
}

AnswerString AnswerString::parse(std::string_view digits)
{
    std::vector<std::uint8_t> bits;
    bits.reserve(digits.size());
    for (char c : digits)
    {
        if (c != '0' && c != '1')
            throw ValidationError("answer string '" + std::string(digits) +
                                  "' contains a non-binary digit");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return AnswerString(std::move(bits));
}

AnswerString AnswerString::from_value(std::uint64_t value, int n)
{
    check_variable_count(n);
    if (value >> n)
        throw ValidationError("answer value " + std::to_string(value) +
                              " does not fit " + std::to_string(n) + " bits");
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
    for (int j = n - 1; j >= 0; --j, value >>= 1)
        bits[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(value & 1u);
    return AnswerString(std::move(bits));
}

std::uint64_t AnswerString::value() const noexcept
{
    std::uint64_t v = 0;
    for (auto b : _bits)
        v = (v << 1) | b;
    return v;
}

std::string AnswerString::to_string() const
{
    std::string s;
    s.reserve(_bits.size());
    for (auto b : _bits)
        s.push_back(static_cast<char>('0' + b));
    return s;
}

// ----------------------------------------------------------------------------

QuestionOrder::QuestionOrder(std::vector<std::uint8_t> order) : _order(std::move(order))
{
    if (_order.empty() || _order.size() > static_cast<std::size_t>(kMaxVariables))
        throw ValidationError("question order must list 1 to " +
                              std::to_string(kMaxVariables) + " variables");
    std::vector<bool> seen(_order.size(), false);
    for (auto v : _order)
    {
        if (v >= _order.size() || seen[v])
            throw ValidationError("question order is not a permutation of 0.." +
                                  std::to_string(static_cast<int>(_order.size()) - 1));
        seen[v] = true;
    }
}

QuestionOrder QuestionOrder::identity(int n)
{
    std::vector<std::uint8_t> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        order[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    return QuestionOrder(std::move(order));
}

QuestionOrder QuestionOrder::parse(std::string_view text)
{
    std::vector<std::uint8_t> order;
    if (text.find(':') == std::string_view::npos)
    {
        for (char c : text)
        {
            if (c < '0' || c > '9')
                throw ValidationError("question order '" + std::string(text) +
                                      "' contains a non-digit");
            order.push_back(static_cast<std::uint8_t>(c - '0'));
        }
    }
    else
    {
        std::size_t start = 0;
        while (start <= text.size())
        {
            auto end = text.find(':', start);
            if (end == std::string_view::npos)
                end = text.size();
            auto field = text.substr(start, end - start);
            unsigned value = 0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() ||
                value > 255)
                throw ValidationError("question order '" + std::string(text) +
                                      "' has a malformed index");
            order.push_back(static_cast<std::uint8_t>(value));
            start = end + 1;
        }
    }
    return QuestionOrder(std::move(order));
}

int QuestionOrder::position_of(int variable) const
{
    auto it = std::find(_order.begin(), _order.end(), variable);
    if (it == _order.end())
        throw ValidationError("variable " + std::to_string(variable) +
                              " not in question order");
    return static_cast<int>(it - _order.begin());
}

std::string QuestionOrder::to_string() const
{
    std::string s;
    const bool separated = _order.size() > 10;
    for (std::size_t j = 0; j < _order.size(); ++j)
    {
        if (separated && j > 0)
            s.push_back(':');
        s += std::to_string(_order[j]);
    }
    return s;
}

// ----------------------------------------------------------------------------

std::uint64_t factorial(int n)
{
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k)
        f *= static_cast<std::uint64_t>(k);
    return f;
}

std::uint64_t perm_rank(const QuestionOrder& order)
{
    const int n = order.size();
    check_variable_count(n);

    // Lehmer code counted against larger unused values gives the rank in
    // descending lexicographic order directly.
    std::uint64_t rank = 0;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (int j = 0; j < n; ++j)
    {
        const int v = order[j];
        int larger = 0;
        for (int u = v + 1; u < n; ++u)
            if (!used[static_cast<std::size_t>(u)])
                ++larger;
        rank += static_cast<std::uint64_t>(larger) * factorial(n - 1 - j);
        used[static_cast<std::size_t>(v)] = true;
    }
    return rank;
}

QuestionOrder perm_unrank(std::uint64_t rank, int n)
{
    check_variable_count(n);
    if (rank >= factorial(n))
        throw ValidationError("permutation rank " + std::to_string(rank) +
                              " out of range for n = " + std::to_string(n));

    // Unused values kept in descending order; digit k picks the k-th.
    std::vector<std::uint8_t> pool;
    for (int v = n - 1; v >= 0; --v)
        pool.push_back(static_cast<std::uint8_t>(v));

    std::vector<std::uint8_t> order;
    order.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
    {
        const auto block = factorial(n - 1 - j);
        const auto k = static_cast<std::size_t>(rank / block);
        rank %= block;
        order.push_back(pool[k]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return QuestionOrder(std::move(order));
}

// ----------------------------------------------------------------------------

StateSpace::StateSpace(int n) : _n(n), _size(0)
{
    check_variable_count(n);
    _size = (std::uint64_t{1} << n) * factorial(n);
}

StateId state_id(const AnswerString& answers, const QuestionOrder& order)
{
    if (answers.size() != order.size())
        throw ValidationError("answer string has " + std::to_string(answers.size()) +
                              " entries but question order has " +
                              std::to_string(order.size()));
    const int n = order.size();
    check_variable_count(n);
    return (perm_rank(order) << n) + answers.value() + 1;
}

State::State(AnswerString answers, QuestionOrder order)
  : _answers(std::move(answers)), _order(std::move(order)),
    _id(state_id(_answers, _order))
{
}

std::string State::to_string() const
{
    return "(" + _answers.to_string() + ", " + _order.to_string() + ")";
}

State state_from_id(StateId id, int n)
{
    const StateSpace space(n);
    if (!space.contains(id))
        throw ValidationError("state id " + std::to_string(id) +
                              " outside [1, " + std::to_string(space.size()) +
                              "] for n = " + std::to_string(n));
    const auto zero_based = id - 1;
    const auto value = zero_based & ((std::uint64_t{1} << n) - 1);
    const auto rank = zero_based >> n;
    return State(AnswerString::from_value(value, n), perm_unrank(rank, n));
}

AnswerString decode_state(const State& state)
{
    const int n = state.variables();
    std::vector<std::uint8_t> row(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        row[static_cast<std::size_t>(state.order()[j])] = state.answers()[j];
    return AnswerString(std::move(row));
}

State encode_row(const AnswerString& row, const QuestionOrder& order)
{
    if (row.size() != order.size())
        throw ValidationError("row has " + std::to_string(row.size()) +
                              " entries but question order has " +
                              std::to_string(order.size()));
    std::vector<std::uint8_t> answers(static_cast<std::size_t>(row.size()));
    for (int j = 0; j < order.size(); ++j)
        answers[static_cast<std::size_t>(j)] = row[order[j]];
    return State(AnswerString(std::move(answers)), order);
}

} // namespace orbitscope
