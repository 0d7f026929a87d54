#include "simgroup/word.hpp"

#include <algorithm>
#include <charconv>

#include "simgroup/error.hpp"

namespace simgroup {

Word::Word(std::initializer_list<int> letters) {
  for (int x : letters) push_back(x);
}

Word Word::parse(std::string_view text) {
  if (text.empty() || text == "ε" || text == "e") return {};
  Word w;
  if (text.find(',') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t next = text.find(',', pos);
      if (next == std::string_view::npos) next = text.size();
      std::string_view tok = text.substr(pos, next - pos);
      int value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 1 || value > 255) {
        throw InputError("bad letter '" + std::string(tok) + "' in word");
      }
      w.push_back(value);
      pos = next + 1;
    }
    return w;
  }
  for (char c : text) {
    if (c < '1' || c > '9') throw InputError("bad letter '" + std::string(1, c) + "' in word");
    w.push_back(c - '0');
  }
  return w;
}

Word Word::operator+(const Word& rhs) const {
  Word out = *this;
  out.letters_.insert(out.letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
  return out;
}

Word Word::child(int letter) const {
  Word out = *this;
  out.push_back(letter);
  return out;
}

Word Word::parent() const {
  Word out = *this;
  out.letters_.pop_back();
  return out;
}

Word Word::prefix(std::size_t n) const {
  return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Word Word::suffix_from(std::size_t n) const {
  return Word(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(n), letters_.end()));
}

bool Word::is_prefix_of(const Word& other) const {
  return size() <= other.size() && std::equal(letters_.begin(), letters_.end(), other.letters_.begin());
}

int Word::max_letter() const {
  int m = 0;
  for (Letter x : letters_) m = std::max<int>(m, x);
  return m;
}

std::string Word::to_string() const { return to_string(max_letter() > 9); }

std::string Word::to_string(bool comma_separated) const {
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (comma_separated) {
      if (i > 0) out += ',';
      out += std::to_string(letters_[i]);
    } else {
      out += static_cast<char>('0' + letters_[i]);
    }
  }
  return out;
}

bool comparable(const Word& a, const Word& b) { return a.is_prefix_of(b) || b.is_prefix_of(a); }

bool is_prefix_free(std::span<const Word> words) {
  std::vector<Word> sorted(words.begin(), words.end());
  std::sort(sorted.begin(), sorted.end());
  // In sorted order a prefix precedes everything it prefixes, so adjacent checks suffice.
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1].is_prefix_of(sorted[i])) return false;
  }
  return true;
}

namespace {

// sorted[lo, hi) all extend `depth` letters of a common prefix.
bool complete_below(const std::vector<Word>& sorted, std::size_t lo, std::size_t hi, std::size_t depth, int d) {
  if (lo == hi) return false;
  if (sorted[lo].size() == depth) return hi - lo == 1;
  std::size_t pos = lo;
  for (int j = 1; j <= d; ++j) {
    std::size_t end = pos;
    while (end < hi && sorted[end][depth] == j) ++end;
    if (!complete_below(sorted, pos, end, depth + 1, d)) return false;
    pos = end;
  }
  return pos == hi;
}

}  // namespace

bool is_complete_prefix_code(std::span<const Word> words, int d) {
  std::vector<Word> sorted(words.begin(), words.end());
  std::sort(sorted.begin(), sorted.end());
  for (const Word& w : sorted) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] < 1 || w[i] > d) return false;
    }
  }
  return complete_below(sorted, 0, sorted.size(), 0, d);
}

std::vector<Word> words_of_length(int d, std::size_t n) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Word> next;
    next.reserve(out.size() * static_cast<std::size_t>(d));
    for (const Word& w : out) {
      for (int j = 1; j <= d; ++j) next.push_back(w.child(j));
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace simgroup
