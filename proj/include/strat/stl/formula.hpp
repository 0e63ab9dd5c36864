#pragma once

#include <cmath>
#include <memory>
#include <string>

#include "strat/util/csv.hpp"
#include "strat/util/error.hpp"

namespace strat {

/// Closed time window [lo, hi] added to the evaluation instant by the
/// bounded temporal operators.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  void check() const {
    if (!(lo >= 0.0) || !(hi >= lo) || !std::isfinite(hi))
      throw DomainError("bad-interval",
                        "[" + format_double(lo) + "," + format_double(hi) + "]");
  }
};

enum class Comparator { Ge, Le };

/// Immutable formula tree. Atoms compare a named scalar function of the
/// state against a threshold; everything else is the usual bounded-STL kit.
class Formula {
public:
  enum class Kind { True, Atom, Not, And, Or, Until, Eventually, Always };

  using Ptr = std::shared_ptr<const Formula>;

  Kind kind;
  // Atom payload
  std::string fn;
  Comparator cmp = Comparator::Ge;
  double threshold = 0.0;
  // temporal payload
  Interval window;
  // children (0, 1, or 2 depending on kind)
  Ptr left;
  Ptr right;

  static Ptr make_true() { return wrap({Kind::True, "", Comparator::Ge, 0, {}, nullptr, nullptr}); }
  static Ptr atom(std::string fn, Comparator cmp, double mu) {
    return wrap({Kind::Atom, std::move(fn), cmp, mu, {}, nullptr, nullptr});
  }
  static Ptr negation(Ptr a) {
    return wrap({Kind::Not, "", Comparator::Ge, 0, {}, std::move(a), nullptr});
  }
  static Ptr conj(Ptr a, Ptr b) {
    return wrap({Kind::And, "", Comparator::Ge, 0, {}, std::move(a), std::move(b)});
  }
  static Ptr disj(Ptr a, Ptr b) {
    return wrap({Kind::Or, "", Comparator::Ge, 0, {}, std::move(a), std::move(b)});
  }
  static Ptr until(Ptr a, Ptr b, Interval w) {
    w.check();
    return wrap({Kind::Until, "", Comparator::Ge, 0, w, std::move(a), std::move(b)});
  }
  static Ptr eventually(Ptr a, Interval w) {
    w.check();
    return wrap({Kind::Eventually, "", Comparator::Ge, 0, w, std::move(a), nullptr});
  }
  static Ptr always(Ptr a, Interval w) {
    w.check();
    return wrap({Kind::Always, "", Comparator::Ge, 0, w, std::move(a), nullptr});
  }

  bool equals(const Formula& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
      case Kind::True: return true;
      case Kind::Atom: return fn == o.fn && cmp == o.cmp && threshold == o.threshold;
      case Kind::Not: return left->equals(*o.left);
      case Kind::And:
      case Kind::Or: return left->equals(*o.left) && right->equals(*o.right);
      case Kind::Until:
        return window.lo == o.window.lo && window.hi == o.window.hi &&
               left->equals(*o.left) && right->equals(*o.right);
      case Kind::Eventually:
      case Kind::Always:
        return window.lo == o.window.lo && window.hi == o.window.hi && left->equals(*o.left);
    }
    return false;
  }

private:
  static Ptr wrap(Formula&& f) { return std::make_shared<const Formula>(std::move(f)); }
};

using FormulaPtr = Formula::Ptr;

/// Canonical text form; parse(print(f)) reproduces f node for node.
inline std::string print(const Formula& f) {
  auto iv = [](const Interval& w) {
    return "[" + format_double(w.lo) + "," + format_double(w.hi) + "]";
  };
  switch (f.kind) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::Atom:
      return f.fn + (f.cmp == Comparator::Ge ? " >= " : " <= ") + format_double(f.threshold);
    case Formula::Kind::Not: return "!(" + print(*f.left) + ")";
    case Formula::Kind::And: return "(" + print(*f.left) + " & " + print(*f.right) + ")";
    case Formula::Kind::Or: return "(" + print(*f.left) + " | " + print(*f.right) + ")";
    case Formula::Kind::Until:
      return "(" + print(*f.left) + " U" + iv(f.window) + " " + print(*f.right) + ")";
    case Formula::Kind::Eventually: return "F" + iv(f.window) + " (" + print(*f.left) + ")";
    case Formula::Kind::Always: return "G" + iv(f.window) + " (" + print(*f.left) + ")";
  }
  return "?";
}

inline std::string print(const FormulaPtr& f) { return print(*f); }

} // namespace strat
