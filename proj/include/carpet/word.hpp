#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace carpet {

using Symbol = std::uint16_t;

// A finite word over the map indices. Symbols are stored 0-based; text
// renderings use the 1-based labels of the maps.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}
  explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

  // Builds a word from 1-based labels, e.g. from_labels({1, 2}) is φ₁∘φ₂.
  static Word from_labels(std::initializer_list<int> labels);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

  void push_back(Symbol s) { symbols_.push_back(s); }
  void pop_back() { symbols_.pop_back(); }

  // i⁻: drops the last symbol.
  Word parent() const;
  Word prefix(std::size_t n) const;
  Word concat(const Word& other) const;

  // 1-based labels joined by '-', empty string for the empty word.
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Symbol> symbols_;
};

// Eventually periodic infinite word: prefix followed by cycle repeated forever.
struct InfiniteWord {
  Word prefix;
  Word cycle;

  Symbol at(std::size_t k) const;
  // The length-n truncation i|n.
  Word truncate(std::size_t n) const;
  std::string to_string() const;
};

}  // namespace carpet
