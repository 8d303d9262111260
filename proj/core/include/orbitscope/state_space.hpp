// state_space.hpp -- answer strings, variable orders and the product state
// space they span, with a canonical integer numbering of its states.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace orbitscope {

/// Canonical 1-based identifier of a state in S_n.
using StateId = std::uint64_t;

/// Largest supported variable count; 2^13 * 13! still fits 64 bits.
inline constexpr int kMaxVariables = 13;

// ============================================================================
// Questions
// ============================================================================

/// How a raw "yes" answer is coded.
enum class Polarity
{
    yes_is_favourable,
    yes_is_unfavourable,
};

/// One binary question (variable) of a panel.
struct QuestionSpec
{
    int index = 0;
    std::string label;
    Polarity polarity = Polarity::yes_is_favourable;

    friend bool operator==(const QuestionSpec&, const QuestionSpec&) = default;
};

/// Throws ValidationError unless the indices are exactly {0, ..., n-1} in
/// order and 1 <= n <= kMaxVariables.
void validate_question_specs(std::span<const QuestionSpec> specs);

/// Mother present (BM), minor household head (HH), adult death (AD).
std::vector<QuestionSpec> household_question_specs();

/// q0 ... q{n-1}, all yes_is_favourable.
std::vector<QuestionSpec> generic_question_specs(int n);

const char* to_string(Polarity polarity);
Polarity parse_polarity(std::string_view text);

// ============================================================================
// AnswerString / QuestionOrder
// ============================================================================

/// n binary answers, 1 = favourable. Position 0 is the most significant bit
/// of value().
class AnswerString
{
public:
    AnswerString() = default;

    /// Throws ValidationError on any entry other than 0 or 1.
    explicit AnswerString(std::vector<std::uint8_t> bits);

    /// Parses a digit string such as "110".
    static AnswerString parse(std::string_view digits);

    static AnswerString from_value(std::uint64_t value, int n);

    int size() const noexcept { return static_cast<int>(_bits.size()); }
    std::uint8_t operator[](int j) const { return _bits[static_cast<std::size_t>(j)]; }
    std::span<const std::uint8_t> bits() const noexcept { return _bits; }

    /// Base-2 value of the string read left to right.
    std::uint64_t value() const noexcept;

    std::string to_string() const;

    friend bool operator==(const AnswerString&, const AnswerString&) = default;

private:
    std::vector<std::uint8_t> _bits;
};

/// A permutation of the variable indices {0, ..., n-1}.
class QuestionOrder
{
public:
    QuestionOrder() = default;

    /// Throws ValidationError unless `order` is a permutation.
    explicit QuestionOrder(std::vector<std::uint8_t> order);

    /// The trivial order 012...(n-1).
    static QuestionOrder identity(int n);

    /// Accepts plain digits ("120") or colon-separated indices
    /// ("2:1:0:3:6:9:7:8:5:4:10:12:11").
    static QuestionOrder parse(std::string_view text);

    int size() const noexcept { return static_cast<int>(_order.size()); }
    int operator[](int j) const { return _order[static_cast<std::size_t>(j)]; }
    std::span<const std::uint8_t> indices() const noexcept { return _order; }

    /// Position j at which variable `variable` sits.
    int position_of(int variable) const;

    /// Digits for n <= 10, colon-separated otherwise.
    std::string to_string() const;

    friend bool operator==(const QuestionOrder&, const QuestionOrder&) = default;

private:
    std::vector<std::uint8_t> _order;
};

// ============================================================================
// Permutation ranking
// ============================================================================

std::uint64_t factorial(int n);

/// 0-based rank of `order` among all permutations of {0..n-1} listed in
/// descending lexicographic order (so 210 -> 0 and 012 -> 5 for n = 3).
std::uint64_t perm_rank(const QuestionOrder& order);

/// Inverse of perm_rank. Throws ValidationError if rank >= n!.
QuestionOrder perm_unrank(std::uint64_t rank, int n);

// ============================================================================
// States
// ============================================================================

/// S_n = X_n x Y_n for a fixed variable count.
class StateSpace
{
public:
    /// Throws ValidationError unless 1 <= n <= kMaxVariables.
    explicit StateSpace(int n);

    int variables() const noexcept { return _n; }

    /// 2^n * n!
    std::uint64_t size() const noexcept { return _size; }

    bool contains(StateId id) const noexcept { return id >= 1 && id <= _size; }

private:
    int _n;
    std::uint64_t _size;
};

/// id = perm_rank(order) * 2^n + value(answers) + 1.
/// Throws ValidationError on a length mismatch or n > kMaxVariables.
StateId state_id(const AnswerString& answers, const QuestionOrder& order);

/// A pair (answers, order) where answers[j] is the answer to question
/// order[j]. Immutable.
class State
{
public:
    State(AnswerString answers, QuestionOrder order);

    const AnswerString& answers() const noexcept { return _answers; }
    const QuestionOrder& order() const noexcept { return _order; }
    StateId id() const noexcept { return _id; }
    int variables() const noexcept { return _answers.size(); }

    /// "(110, 120)"
    std::string to_string() const;

    friend bool operator==(const State& a, const State& b) noexcept
    {
        return a._id == b._id && a.variables() == b.variables();
    }

private:
    AnswerString _answers;
    QuestionOrder _order;
    StateId _id;
};

/// Inverse of state_id. Throws ValidationError if id is outside [1, 2^n n!].
State state_from_id(StateId id, int n);

/// Answers re-sorted so position i holds the answer to question i.
AnswerString decode_state(const State& state);

/// Places a row given in the trivial order into `order`'s arrangement.
State encode_row(const AnswerString& row, const QuestionOrder& order);

} // namespace orbitscope
