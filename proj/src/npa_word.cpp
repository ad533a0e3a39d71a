#include "ghzst/npa.hpp"

#include <algorithm>

namespace ghzst::npa {

bool Word::is_identity() const {
  return std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.empty(); });
}

std::size_t Word::degree() const {
  std::size_t d = 0;
  for (const auto& p : parts) d += p.size();
  return d;
}

Word Word::adjoint() const {
  Word w = *this;
  for (auto& p : w.parts) std::reverse(p.begin(), p.end());
  return w;
}

std::string Word::to_string() const {
  if (is_identity()) return "I";
  static constexpr char names[kParties] = {'A', 'B', 'C'};
  std::string s;
  for (std::size_t p = 0; p < kParties; ++p)
    for (auto idx : parts[p]) {
      s += names[p];
      s += static_cast<char>('0' + idx);
    }
  return s;
}

Reduction reduce(std::span<const Letter> letters) {
  Word w;
  for (const auto& l : letters) {
    if (l.index > 1) throw ContractError("npa::reduce: letter index must be 0 or 1");
    auto& part = w.parts[static_cast<std::size_t>(l.party)];
    if (!part.empty() && part.back() == l.index)
      part.pop_back();
    else
      part.push_back(l.index);
  }
  Word adj = w.adjoint();
  if (adj < w) return {std::move(adj), 1, true};
  return {std::move(w), 1, false};
}

Reduction reduce(const Word& word) {
  std::vector<Letter> letters;
  for (std::size_t p = 0; p < kParties; ++p)
    for (auto idx : word.parts[p]) letters.push_back({static_cast<Party>(p), idx});
  return reduce(letters);
}

}  // namespace ghzst::npa
