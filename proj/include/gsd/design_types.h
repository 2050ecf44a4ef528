#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "gsd/model.h"

namespace gsd {

enum class Polarity { kAdd, kRemove };

/// One initial-state modification: make `fluent` true (kAdd) or false
/// (kRemove) in both the robot and the human initial state.
struct DesignAtom {
  FluentId fluent = 0;
  Polarity polarity = Polarity::kAdd;
  std::int64_t cost = 1;

  friend bool operator==(const DesignAtom& a, const DesignAtom& b) {
    return a.fluent == b.fluent && a.polarity == b.polarity;
  }
  friend auto operator<=>(const DesignAtom& a, const DesignAtom& b) {
    if (auto c = a.fluent <=> b.fluent; c != 0) return c;
    return static_cast<int>(a.polarity) <=> static_cast<int>(b.polarity);
  }
};

/// A set of design atoms, kept sorted and duplicate free.
class Design {
 public:
  Design() = default;
  explicit Design(std::vector<DesignAtom> atoms);

  const std::vector<DesignAtom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  std::int64_t cost() const;
  bool contains(const DesignAtom& a) const;

  /// "+r -h" style rendering using the model's fluent names.
  std::string to_string(const GroundedModel& m) const;

  friend bool operator==(const Design&, const Design&) = default;
  friend auto operator<=>(const Design& a, const Design& b) {
    return a.atoms_ <=> b.atoms_;
  }

 private:
  std::vector<DesignAtom> atoms_;
};

std::string format_atom(const GroundedModel& m, const DesignAtom& a);

}  // namespace gsd
