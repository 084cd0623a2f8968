#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tpj/multigraph.hpp"

namespace tpj {

/// One move of the two-step axiom: stay, or change a single coordinate by 1.
struct Step {
  enum class Kind { stay, increment, decrement };
  Kind kind = Kind::stay;
  int rank = -1;  // coordinate index for increment/decrement

  bool operator==(const Step& o) const { return kind == o.kind && rank == o.rank; }
};

inline DemandVector apply(const Step& s, DemandVector x) {
  switch (s.kind) {
    case Step::Kind::stay: break;
    case Step::Kind::increment: ++x.at(s.rank); break;
    case Step::Kind::decrement: --x.at(s.rank); break;
  }
  return x;
}

/// A step from x toward y is: x itself iff x == y, otherwise a unit move that
/// shrinks some coordinate gap.
inline bool legal_step(const Step& s, const DemandVector& x, const DemandVector& y) {
  if (x.size() != y.size()) return false;
  if (s.kind == Step::Kind::stay) return x == y;
  if (s.rank < 0 || s.rank >= static_cast<int>(x.size())) return false;
  if (x == y) return false;
  if (s.kind == Step::Kind::increment) return x[s.rank] < y[s.rank];
  return x[s.rank] > y[s.rank];
}

/// All steps from x toward y, one per differing coordinate (or the single
/// stay step when x == y), in coordinate order.
inline std::vector<Step> steps_toward(const DemandVector& x, const DemandVector& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("steps_toward: vectors of different length");
  if (x == y) return {Step{}};
  std::vector<Step> out;
  for (int i = 0; i < static_cast<int>(x.size()); ++i) {
    if (x[i] < y[i]) out.push_back(Step{Step::Kind::increment, i});
    else if (x[i] > y[i]) out.push_back(Step{Step::Kind::decrement, i});
  }
  return out;
}

inline std::string step_to_string(const Step& s, const std::vector<std::string>& ground) {
  switch (s.kind) {
    case Step::Kind::stay: return "stay";
    case Step::Kind::increment: return "+" + ground.at(s.rank);
    case Step::Kind::decrement: return "-" + ground.at(s.rank);
  }
  return "stay";
}

inline Step parse_step(const std::string& text, const std::vector<std::string>& ground) {
  if (text == "stay") return Step{};
  if (text.size() < 2 || (text[0] != '+' && text[0] != '-'))
    throw std::invalid_argument("step must be 'stay', '+<terminal>' or '-<terminal>'");
  std::string name = text.substr(1);
  auto it = std::find(ground.begin(), ground.end(), name);
  if (it == ground.end()) throw std::invalid_argument("step references unknown terminal '" + name + "'");
  Step s;
  s.kind = text[0] == '+' ? Step::Kind::increment : Step::Kind::decrement;
  s.rank = static_cast<int>(it - ground.begin());
  return s;
}

/// Explicit finite set of nonnegative integer vectors over a named ground set,
/// kept sorted for deterministic iteration and binary-search membership.
struct FiniteJumpSystem {
  std::vector<std::string> ground;
  std::vector<DemandVector> vectors;  // sorted lexicographically, unique
  DemandVector box;                   // per-coordinate upper bounds

  bool contains(const DemandVector& v) const {
    return std::binary_search(vectors.begin(), vectors.end(), v);
  }

  void normalize() {
    std::sort(vectors.begin(), vectors.end());
    vectors.erase(std::unique(vectors.begin(), vectors.end()), vectors.end());
    if (box.size() != ground.size()) {
      box.assign(ground.size(), 0);
      for (const auto& v : vectors)
        for (size_t i = 0; i < v.size(); ++i) box[i] = std::max(box[i], v[i]);
    }
  }
};

inline FiniteJumpSystem make_system(std::vector<std::string> ground,
                                    std::vector<DemandVector> vectors) {
  FiniteJumpSystem j;
  j.ground = std::move(ground);
  j.vectors = std::move(vectors);
  for (const auto& v : j.vectors) {
    if (v.size() != j.ground.size())
      throw std::invalid_argument("vector length does not match ground set");
    for (int c : v)
      if (c < 0) throw std::invalid_argument("jump system vectors must be nonnegative");
  }
  j.normalize();
  return j;
}

struct AxiomCounterexample {
  DemandVector x, y, first;  // first = the step x' that cannot be completed
};

struct AxiomVerdict {
  std::optional<AxiomCounterexample> counterexample;
  bool ok() const { return !counterexample.has_value(); }
};

namespace detail {

/// Candidate first steps ordered so that counterexamples are reported with the
/// lexicographically smallest triple (x, y, x').
inline std::vector<DemandVector> ordered_first_steps(const DemandVector& x,
                                                     const DemandVector& y) {
  std::vector<DemandVector> out;
  for (const auto& s : steps_toward(x, y))
    if (s.kind != Step::Kind::stay) out.push_back(apply(s, x));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Checks the two-step axiom: for all x, y in J and every step x' from x
/// toward y, either x' is in J or some step from x' toward y lands in J.
/// Returns the lexicographically first counterexample triple if any.
inline AxiomVerdict check_two_step_axiom(const FiniteJumpSystem& j) {
  for (const auto& x : j.vectors)
    for (const auto& y : j.vectors) {
      if (x == y) continue;  // the stay step trivially stays in J
      for (const auto& x1 : detail::ordered_first_steps(x, y)) {
        if (j.contains(x1)) continue;
        bool saved = false;
        for (const auto& s2 : steps_toward(x1, y))
          if (j.contains(apply(s2, x1))) {
            saved = true;
            break;
          }
        if (!saved) return AxiomVerdict{AxiomCounterexample{x, y, x1}};
      }
    }
  return {};
}

/// Symmetric-exchange check for 0-1 systems (delta-matroids).  Input must be
/// 0-1 valued; this is exactly the two-step axiom restricted to that range.
inline AxiomVerdict check_delta_matroid(const FiniteJumpSystem& j) {
  for (const auto& v : j.vectors)
    for (int c : v)
      if (c != 0 && c != 1)
        throw std::invalid_argument("check_delta_matroid requires a 0-1 system");
  for (const auto& x : j.vectors)
    for (const auto& y : j.vectors) {
      if (x == y) continue;
      for (const auto& x1 : detail::ordered_first_steps(x, y)) {
        if (j.contains(x1)) continue;
        bool saved = false;
        for (int t = 0; t < static_cast<int>(x1.size()); ++t) {
          if (x1[t] == y[t]) continue;
          DemandVector x2 = x1;
          x2[t] ^= 1;
          if (j.contains(x2)) {
            saved = true;
            break;
          }
        }
        if (!saved) return AxiomVerdict{AxiomCounterexample{x, y, x1}};
      }
    }
  return {};
}

struct EvenSumVerdict {
  std::optional<DemandVector> offender;
  bool ok() const { return !offender.has_value(); }
};

/// All coordinate sums even (every endpoint pairing consumes two ends).
inline EvenSumVerdict check_even_sum(const FiniteJumpSystem& j) {
  for (const auto& v : j.vectors) {
    long long s = 0;
    for (int c : v) s += c;
    if (s % 2 != 0) return EvenSumVerdict{v};
  }
  return {};
}

}  // namespace tpj
