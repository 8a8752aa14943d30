#include "mstd/int_set.hpp"

#include <charconv>

namespace mstd {

IntSet IntSet::from_elements(const std::vector<int>& elems, int universe_size) {
  if (universe_size == 0) {
    int mx = 0;
    for (int e : elems) mx = std::max(mx, e);
    universe_size = elems.empty() ? 1 : mx + 1;
  }
  IntSet s(universe_size);
  for (int e : elems) s.add(e);
  return s;
}

namespace {

std::string_view trimmed(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

IntSet parse_set(std::string_view text, int universe_size) {
  text = trimmed(text);
  std::vector<int> elems;
  if (!text.empty()) {
    std::size_t pos = 0;
    for (;;) {
      const std::size_t comma = text.find(',', pos);
      const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
      const std::string_view tok = trimmed(text.substr(pos, end - pos));
      if (tok.empty()) throw std::invalid_argument("set literal: empty element");
      int value = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 0) {
        throw std::invalid_argument("set literal: bad element '" + std::string(tok) + "'");
      }
      elems.push_back(value);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  int fitted = universe_size;
  if (fitted == 0) {
    int mx = 0;
    for (int e : elems) mx = std::max(mx, e);
    fitted = elems.empty() ? 1 : mx + 1;
  }
  IntSet s(fitted);
  for (int e : elems) {
    if (s.contains(e)) throw std::invalid_argument("set literal: duplicate element " + std::to_string(e));
    s.add(e);
  }
  return s;
}

std::string format_set(const IntSet& s) {
  std::string out;
  s.for_each([&](int e) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  });
  return out;
}

}  // namespace mstd
