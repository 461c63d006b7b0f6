#include <algorithm>
#include <cmath>
#include <limits>

#include "oodlab/hypothesis.hpp"

namespace oodlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_empty(const Interval& iv) {
  if (iv.lo > iv.hi) return true;
  if (iv.lo == iv.hi) return !(iv.lo_closed && iv.hi_closed) || std::isinf(iv.lo);
  return false;
}

// Sort key: lower endpoint, closed before open at equal values.
bool starts_before(const Interval& a, const Interval& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.lo_closed && !b.lo_closed;
}

}  // namespace

IntervalList normalize_intervals(IntervalList intervals) {
  IntervalList kept;
  kept.reserve(intervals.size());
  for (auto iv : intervals) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi)) continue;
    if (std::isinf(iv.lo)) iv.lo_closed = false;
    if (std::isinf(iv.hi)) iv.hi_closed = false;
    if (!is_empty(iv)) kept.push_back(iv);
  }
  std::sort(kept.begin(), kept.end(), starts_before);
  IntervalList out;
  for (const auto& iv : kept) {
    if (!out.empty()) {
      Interval& cur = out.back();
      const bool joins =
          iv.lo < cur.hi || (iv.lo == cur.hi && (cur.hi_closed || iv.lo_closed));
      if (joins) {
        if (iv.hi > cur.hi) {
          cur.hi = iv.hi;
          cur.hi_closed = iv.hi_closed;
        } else if (iv.hi == cur.hi) {
          cur.hi_closed = cur.hi_closed || iv.hi_closed;
        }
        continue;
      }
    }
    out.push_back(iv);
  }
  return out;
}

IntervalList intersect_intervals(const IntervalList& a, const IntervalList& b) {
  IntervalList out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Interval iv;
      if (x.lo > y.lo) {
        iv.lo = x.lo;
        iv.lo_closed = x.lo_closed;
      } else if (y.lo > x.lo) {
        iv.lo = y.lo;
        iv.lo_closed = y.lo_closed;
      } else {
        iv.lo = x.lo;
        iv.lo_closed = x.lo_closed && y.lo_closed;
      }
      if (x.hi < y.hi) {
        iv.hi = x.hi;
        iv.hi_closed = x.hi_closed;
      } else if (y.hi < x.hi) {
        iv.hi = y.hi;
        iv.hi_closed = y.hi_closed;
      } else {
        iv.hi = x.hi;
        iv.hi_closed = x.hi_closed && y.hi_closed;
      }
      out.push_back(iv);
    }
  }
  return normalize_intervals(std::move(out));
}

IntervalList complement_intervals(const IntervalList& a) {
  const IntervalList norm = normalize_intervals(a);
  IntervalList out;
  double lo = -kInf;
  bool lo_closed = false;
  for (const auto& iv : norm) {
    out.push_back({lo, iv.lo, lo_closed, !iv.lo_closed});
    lo = iv.hi;
    lo_closed = !iv.hi_closed;
  }
  out.push_back({lo, kInf, lo_closed, false});
  return normalize_intervals(std::move(out));
}

IntervalList unite_intervals(const IntervalList& a, const IntervalList& b) {
  IntervalList all = a;
  all.insert(all.end(), b.begin(), b.end());
  return normalize_intervals(std::move(all));
}

}  // namespace oodlab
