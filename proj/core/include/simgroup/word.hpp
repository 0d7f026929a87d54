#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace simgroup {

// Finite word over {1..d}. Ordering is lexicographic with a proper prefix
// sorting before its extensions.
class Word {
 public:
  using Letter = std::uint8_t;

  Word() = default;
  Word(std::initializer_list<int> letters);
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  // Digit string ("121"), comma-separated ("1,12,3"), or "" / "ε" for the empty word.
  static Word parse(std::string_view text);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int operator[](std::size_t i) const { return letters_[i]; }
  int back() const { return letters_.back(); }
  const std::vector<Letter>& letters() const { return letters_; }

  void push_back(int letter) { letters_.push_back(static_cast<Letter>(letter)); }
  Word operator+(const Word& rhs) const;
  Word child(int letter) const;
  Word parent() const;
  Word prefix(std::size_t n) const;
  Word suffix_from(std::size_t n) const;

  bool is_prefix_of(const Word& other) const;
  int max_letter() const;

  // Digits when every letter is at most 9, comma-separated otherwise.
  std::string to_string() const;
  std::string to_string(bool comma_separated) const;

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

// Balls wA^ω and w'A^ω intersect iff one word is a prefix of the other.
bool comparable(const Word& a, const Word& b);

bool is_prefix_free(std::span<const Word> words);

// Complete prefix code over the full d-ary tree: every infinite word has
// exactly one prefix in the set.
bool is_complete_prefix_code(std::span<const Word> words, int d);

// All words of length n over {1..d} in lexicographic order.
std::vector<Word> words_of_length(int d, std::size_t n);

}  // namespace simgroup
