#include "gsd/design_types.h"

#include <algorithm>

#include "gsd/error.h"

namespace gsd {

Design::Design(std::vector<DesignAtom> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
  for (std::size_t i = 1; i < atoms_.size(); ++i)
    if (atoms_[i].fluent == atoms_[i - 1].fluent)
      throw ModelError("design both adds and removes fluent " +
                       std::to_string(atoms_[i].fluent));
}

std::int64_t Design::cost() const {
  std::int64_t c = 0;
  for (const auto& a : atoms_) c += a.cost;
  return c;
}

bool Design::contains(const DesignAtom& a) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), a);
}

std::string format_atom(const GroundedModel& m, const DesignAtom& a) {
  return (a.polarity == Polarity::kAdd ? "+" : "-") +
         m.fluents.at(static_cast<std::size_t>(a.fluent));
}

std::string Design::to_string(const GroundedModel& m) const {
  if (atoms_.empty()) return "{}";
  std::string out;
  for (const auto& a : atoms_) {
    if (!out.empty()) out += ' ';
    out += format_atom(m, a);
  }
  return out;
}

}  // namespace gsd
