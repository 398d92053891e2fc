#include <vector>

#include "lampwalk/walk.hpp"

namespace lampwalk {

// Eliminates transient states from the top down. Every state keeps its
// outgoing weights to k-1, k+1, k+2 and to the three absorbing sets; the
// weights of an eliminated state are renormalized by its total outflow, so
// no quantity is ever formed as 1 - (something).
HittingSplit hitting_split_reduction(const WalkModel& model, Index m, Index n) {
  if (!(m >= 1 && n >= m + 2))
    throw InvalidArgument("hitting_split_reduction requires m >= 1 and n >= m + 2");
  const Index lo = m + 1, hi = n - 1;
  const auto size = static_cast<std::size_t>(hi - lo + 1);
  struct Out {
    double down = 0.0, up1 = 0.0, up2 = 0.0, low = 0.0, at_n = 0.0, at_n1 = 0.0;
  };
  std::vector<Out> st(size);
  auto at = [&](Index k) -> Out& { return st[static_cast<std::size_t>(k - lo)]; };
  for (Index k = lo; k <= hi; ++k) {
    const StepProbs pr = model.probs(k);
    Out& o = at(k);
    (k - 1 >= lo ? o.down : o.low) = pr.q;
    if (k + 2 <= hi)
      o.up2 = pr.p;
    else if (k + 2 == n)
      o.at_n = pr.p;
    else
      o.at_n1 = pr.p;
  }
  for (Index j = hi; j >= lo + 1; --j) {
    const Out& e = at(j);
    const double total = e.down + e.low + e.at_n + e.at_n1;
    // predecessor j-1 reaches j by a +1 edge; j's down edge returns to it
    Out& a = at(j - 1);
    if (a.up1 > 0.0) {
      const double w = a.up1 / total;
      a.up1 = 0.0;
      a.low += w * e.low;
      a.at_n += w * e.at_n;
      a.at_n1 += w * e.at_n1;
    }
    if (j - 2 >= lo) {
      Out& b = at(j - 2);
      if (b.up2 > 0.0) {
        const double w = b.up2 / total;
        b.up2 = 0.0;
        b.up1 += w * e.down;
        b.low += w * e.low;
        b.at_n += w * e.at_n;
        b.at_n1 += w * e.at_n1;
      }
    }
  }
  const Out& s = at(lo);
  const double total = s.low + s.at_n + s.at_n1;
  return {s.at_n / total, s.at_n1 / total, s.low / total};
}

}  // namespace lampwalk
