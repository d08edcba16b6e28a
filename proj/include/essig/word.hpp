#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace essig {

/// A multi-index I = (i1, ..., in) with letters in 1..d.
///
/// Words index tensor coefficients with the first letter most significant:
/// index(I) = sum_j (i_j - 1) * d^(n - j). The text form concatenates the
/// letters ("112"), so it is only defined for alphabets of at most 9 letters.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

    static Word parse(std::string_view text);
    static Word from_index(std::size_t index, int length, int dimension);

    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    int operator[](std::size_t i) const { return letters_[i]; }
    const std::vector<int>& letters() const { return letters_; }

    /// Throws UsageError if a letter falls outside 1..dimension.
    std::size_t index(int dimension) const;
    std::string str() const;

    Word operator+(const Word& tail) const;

    auto operator<=>(const Word&) const = default;

private:
    std::vector<int> letters_;
};

/// d^k as a size; dimension and level are small so this never overflows in practice.
std::size_t level_size(int dimension, int level);

}  // namespace essig
