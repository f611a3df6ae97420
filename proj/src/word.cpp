#include "carpet/word.hpp"

#include "carpet/error.hpp"

namespace carpet {

Word Word::from_labels(std::initializer_list<int> labels) {
  Word w;
  for (int label : labels) {
    if (label < 1) throw Error(Errc::SymbolOutOfRange, "labels are 1-based");
    w.push_back(static_cast<Symbol>(label - 1));
  }
  return w;
}

Word Word::parent() const {
  if (symbols_.empty()) throw Error(Errc::InvalidArgument, "the empty word has no parent");
  return prefix(symbols_.size() - 1);
}

Word Word::prefix(std::size_t n) const {
  if (n > symbols_.size()) throw Error(Errc::InvalidArgument, "prefix longer than word");
  return Word(std::vector<Symbol>(symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Word Word::concat(const Word& other) const {
  std::vector<Symbol> s = symbols_;
  s.insert(s.end(), other.symbols_.begin(), other.symbols_.end());
  return Word(std::move(s));
}

std::string Word::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) out.push_back('-');
    out += std::to_string(symbols_[i] + 1);
  }
  return out;
}

Symbol InfiniteWord::at(std::size_t k) const {
  if (k < prefix.size()) return prefix[k];
  if (cycle.empty()) throw Error(Errc::InvalidArgument, "infinite word needs a nonempty cycle");
  return cycle[(k - prefix.size()) % cycle.size()];
}

Word InfiniteWord::truncate(std::size_t n) const {
  std::vector<Symbol> s;
  s.reserve(n);
  for (std::size_t k = 0; k < n; ++k) s.push_back(at(k));
  return Word(std::move(s));
}

std::string InfiniteWord::to_string() const { return prefix.to_string() + "(" + cycle.to_string() + ")"; }

}  // namespace carpet
