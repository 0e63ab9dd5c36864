#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "strat/core/trace.hpp"
#include "strat/stl/formula.hpp"
#include "strat/util/error.hpp"

namespace strat {

/// Named scalar functions of the state vector for atoms to reference.
/// Coordinate projections x1..xD resolve implicitly; trace channel names
/// take precedence since they are specific to the data being evaluated.
class FunctionRegistry {
public:
  using Fn = std::function<double(const Eigen::VectorXd&)>;

  void add(const std::string& name, Fn fn) { fns_[name] = std::move(fn); }
  bool has(const std::string& name) const { return fns_.count(name) != 0; }

  double eval(const std::string& name, const Eigen::VectorXd& x) const {
    auto it = fns_.find(name);
    if (it != fns_.end()) return it->second(x);
    // implicit coordinate projections
    if (name.size() > 1 && name[0] == 'x') {
      char* end = nullptr;
      const long k = std::strtol(name.c_str() + 1, &end, 10);
      if (end && *end == '\0' && k >= 1 && k <= x.size()) return x[k - 1];
    }
    throw DomainError("unresolved-function", "'" + name + "'");
  }

  /// Affine combination sum(w_i * x_i) + b under the given name.
  void add_affine(const std::string& name, Eigen::VectorXd weights, double bias) {
    add(name, [w = std::move(weights), bias](const Eigen::VectorXd& x) {
      if (x.size() != w.size()) throw DomainError("dimension-mismatch", "affine function");
      return w.dot(x) + bias;
    });
  }

private:
  std::map<std::string, Fn> fns_;
};

struct RobustnessOptions {
  double big = 1e9;      // saturation value for empty windows and 'true'
  double time_tol = 1e-9; // slack when mapping window endpoints to samples
};

namespace stl_detail {

struct WindowBounds {
  std::size_t first = 1; // empty when first > last
  std::size_t last = 0;
};

/// Sample indices whose time lies in [t + lo, t + hi], truncated to the
/// trace end. Inclusive rounding: the first sample at or after t+lo through
/// the last sample at or before t+hi.
inline WindowBounds window_indices(const Trace& tr, std::size_t t, const Interval& w,
                                   double tol) {
  const double start = tr.times[t] + w.lo;
  const double stop = tr.times[t] + w.hi;
  WindowBounds out;
  std::size_t j = t;
  while (j < tr.times.size() && tr.times[j] < start - tol) ++j;
  if (j >= tr.times.size()) return out; // empty
  std::size_t k = tr.times.size() - 1;
  while (k > j && tr.times[k] > stop + tol) --k;
  if (tr.times[k] > stop + tol) return out;
  out.first = j;
  out.last = k;
  return out;
}

inline double atom_value(const Formula& f, const Trace& tr, std::size_t t,
                         const FunctionRegistry& reg) {
  const int ch = f.fn.empty() ? -1 : tr.channel_index(f.fn);
  const double v = ch >= 0 ? tr.states[t][ch] : reg.eval(f.fn, tr.states[t]);
  return f.cmp == Comparator::Ge ? v - f.threshold : f.threshold - v;
}

} // namespace stl_detail

/// Quantitative robustness of phi on the trace at sample t_index. Positive
/// means satisfied with that margin. Temporal windows truncated past the
/// trace end saturate at -big (Eventually/Until) or +big (Always).
inline double robustness(const Formula& phi, const Trace& trace, std::size_t t_index,
                         const FunctionRegistry& reg, const RobustnessOptions& opt = {}) {
  if (t_index >= trace.length())
    throw DomainError("index-out-of-range", "t_index " + std::to_string(t_index) +
                                                " with trace length " +
                                                std::to_string(trace.length()));
  using K = Formula::Kind;
  switch (phi.kind) {
    case K::True: return opt.big;
    case K::Atom: return stl_detail::atom_value(phi, trace, t_index, reg);
    case K::Not: return -robustness(*phi.left, trace, t_index, reg, opt);
    case K::And:
      return std::min(robustness(*phi.left, trace, t_index, reg, opt),
                      robustness(*phi.right, trace, t_index, reg, opt));
    case K::Or:
      return std::max(robustness(*phi.left, trace, t_index, reg, opt),
                      robustness(*phi.right, trace, t_index, reg, opt));
    case K::Eventually: {
      const auto w = stl_detail::window_indices(trace, t_index, phi.window, opt.time_tol);
      double best = -opt.big;
      for (std::size_t j = w.first; j <= w.last && j < trace.length(); ++j)
        best = std::max(best, robustness(*phi.left, trace, j, reg, opt));
      return best;
    }
    case K::Always: {
      const auto w = stl_detail::window_indices(trace, t_index, phi.window, opt.time_tol);
      double worst = opt.big;
      for (std::size_t j = w.first; j <= w.last && j < trace.length(); ++j)
        worst = std::min(worst, robustness(*phi.left, trace, j, reg, opt));
      return worst;
    }
    case K::Until: {
      const auto w = stl_detail::window_indices(trace, t_index, phi.window, opt.time_tol);
      double best = -opt.big;
      for (std::size_t j = w.first; j <= w.last && j < trace.length(); ++j) {
        double run = robustness(*phi.right, trace, j, reg, opt);
        for (std::size_t k = t_index; k <= j; ++k)
          run = std::min(run, robustness(*phi.left, trace, k, reg, opt));
        best = std::max(best, run);
      }
      return best;
    }
  }
  throw DomainError("bad-formula", "unknown node kind");
}

/// Boolean satisfaction computed without min/max; the independent check for
/// the sign of the quantitative semantics.
inline bool robustness_bool_oracle(const Formula& phi, const Trace& trace, std::size_t t_index,
                                   const FunctionRegistry& reg,
                                   const RobustnessOptions& opt = {}) {
  if (t_index >= trace.length())
    throw DomainError("index-out-of-range", "t_index " + std::to_string(t_index));
  using K = Formula::Kind;
  switch (phi.kind) {
    case K::True: return true;
    case K::Atom: return stl_detail::atom_value(phi, trace, t_index, reg) >= 0.0;
    case K::Not: return !robustness_bool_oracle(*phi.left, trace, t_index, reg, opt);
    case K::And:
      return robustness_bool_oracle(*phi.left, trace, t_index, reg, opt) &&
             robustness_bool_oracle(*phi.right, trace, t_index, reg, opt);
    case K::Or:
      return robustness_bool_oracle(*phi.left, trace, t_index, reg, opt) ||
             robustness_bool_oracle(*phi.right, trace, t_index, reg, opt);
    case K::Eventually: {
      const auto w = stl_detail::window_indices(trace, t_index, phi.window, opt.time_tol);
      for (std::size_t j = w.first; j <= w.last && j < trace.length(); ++j)
        if (robustness_bool_oracle(*phi.left, trace, j, reg, opt)) return true;
      return false;
    }
    case K::Always: {
      const auto w = stl_detail::window_indices(trace, t_index, phi.window, opt.time_tol);
      for (std::size_t j = w.first; j <= w.last && j < trace.length(); ++j)
        if (!robustness_bool_oracle(*phi.left, trace, j, reg, opt)) return false;
      return true;
    }
    case K::Until: {
      const auto w = stl_detail::window_indices(trace, t_index, phi.window, opt.time_tol);
      for (std::size_t j = w.first; j <= w.last && j < trace.length(); ++j) {
        if (!robustness_bool_oracle(*phi.right, trace, j, reg, opt)) continue;
        bool held = true;
        for (std::size_t k = t_index; k <= j && held; ++k)
          held = robustness_bool_oracle(*phi.left, trace, k, reg, opt);
        if (held) return true;
      }
      return false;
    }
  }
  throw DomainError("bad-formula", "unknown node kind");
}

/// Robustness scaled into [-1, 1].
inline double normalize(double rho, double scale) {
  if (!(scale > 0)) throw DomainError("nonpositive-scale", format_double(scale));
  return std::clamp(rho / scale, -1.0, 1.0);
}

} // namespace strat
