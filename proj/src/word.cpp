#include "essig/word.hpp"

#include "essig/errors.hpp"

namespace essig {

std::size_t level_size(int dimension, int level) {
    std::size_t n = 1;
    for (int k = 0; k < level; ++k) n *= static_cast<std::size_t>(dimension);
    return n;
}

Word Word::parse(std::string_view text) {
    std::vector<int> letters;
    letters.reserve(text.size());
    for (char c : text) {
        if (c < '1' || c > '9') throw ParseError("invalid letter in word '" + std::string(text) + "'");
        letters.push_back(c - '0');
    }
    return Word(std::move(letters));
}

Word Word::from_index(std::size_t index, int length, int dimension) {
    std::vector<int> letters(static_cast<std::size_t>(length));
    for (int j = length - 1; j >= 0; --j) {
        letters[static_cast<std::size_t>(j)] = static_cast<int>(index % static_cast<std::size_t>(dimension)) + 1;
        index /= static_cast<std::size_t>(dimension);
    }
    if (index != 0) throw UsageError("word index out of range");
    return Word(std::move(letters));
}

std::size_t Word::index(int dimension) const {
    std::size_t idx = 0;
    for (int letter : letters_) {
        if (letter < 1 || letter > dimension)
            throw UsageError("letter " + std::to_string(letter) + " outside alphabet of size " +
                             std::to_string(dimension));
        idx = idx * static_cast<std::size_t>(dimension) + static_cast<std::size_t>(letter - 1);
    }
    return idx;
}

std::string Word::str() const {
    std::string s;
    s.reserve(letters_.size());
    for (int letter : letters_) {
        if (letter < 1 || letter > 9) throw UsageError("word has no text form for letters above 9");
        s.push_back(static_cast<char>('0' + letter));
    }
    return s;
}

Word Word::operator+(const Word& tail) const {
    std::vector<int> joined = letters_;
    joined.insert(joined.end(), tail.letters_.begin(), tail.letters_.end());
    return Word(std::move(joined));
}

}  // namespace essig
