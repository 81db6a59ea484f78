#include "ietlab/induce.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <utility>

namespace ietlab {

namespace {

struct Segment {
  HalfOpen source;        // subinterval of J this segment descends from
  HalfOpen current;       // E^steps(source)
  Scalar displacement;    // current = source + displacement
  long steps = 0;         // applications of E so far
  std::vector<int> word;  // symbols of source, E(source), ...
};

Iet assemble(const HalfOpen& J, const std::vector<InducedPiece>& pieces) {
  const int p = static_cast<int>(pieces.size());
  std::vector<Scalar> lengths;
  lengths.reserve(p);
  for (const InducedPiece& piece : pieces) lengths.push_back(piece.source.length());

  // Rank the piece images by their left endpoint; rank = destination slot.
  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int u, int v) {
    return pieces[u].image().lo < pieces[v].image().lo;
  });
  std::vector<int> images(p);
  for (int rank = 0; rank < p; ++rank) images[order[rank]] = rank + 1;

  return Iet(Permutation(images), ExchangeLengths(std::move(lengths)), J.lo);
}

}  // namespace

InducedSystem::InducedSystem(Iet parent, HalfOpen window,
                             std::vector<InducedPiece> pieces)
    : parent_(std::move(parent)),
      window_(std::move(window)),
      pieces_(std::move(pieces)),
      induced_(assemble(window_, pieces_)) {}

Scalar InducedSystem::orbit_tile_measure() const {
  Scalar total(0);
  for (const InducedPiece& piece : pieces_) {
    total += Scalar(piece.return_steps + 1) * piece.source.length();
  }
  return total;
}

InducedSystem induce(const Iet& E, const HalfOpen& J, long step_cap) {
  const HalfOpen dom = E.domain();
  if (J.empty()) throw DomainError("induction window is empty");
  if (J.lo < dom.lo || J.hi > dom.hi) {
    throw DomainError("induction window [" + J.lo.str() + ", " + J.hi.str() +
                      ") is not contained in the domain");
  }

  std::deque<Segment> work;
  work.push_back({J, J, Scalar(0), 0, {}});
  std::vector<InducedPiece> done;

  while (!work.empty()) {
    Segment seg = std::move(work.front());
    work.pop_front();

    if (seg.steps >= step_cap) {
      throw NonReturnError("no return to the window from [" +
                           seg.source.lo.str() + ", " + seg.source.hi.str() +
                           ") within " + std::to_string(step_cap) + " steps");
    }

    // One application of E: split seg.current at interior discontinuities,
    // translate each part, then route by position relative to J.
    const int first = E.interval_index(seg.current.lo);
    Scalar lo = seg.current.lo;
    for (int i = first; i <= E.n() && lo < seg.current.hi; ++i) {
      const Scalar cut = std::min(E.breakpoint(i), seg.current.hi);
      if (!(lo < cut)) continue;

      Segment child;
      const Scalar back = lo - seg.current.lo;  // offset within the segment
      child.source = {seg.source.lo + back, seg.source.lo + back + (cut - lo)};
      child.displacement = seg.displacement + E.displacement(i);
      child.current = {child.source.lo + child.displacement,
                       child.source.hi + child.displacement};
      child.steps = seg.steps + 1;
      child.word = seg.word;
      child.word.push_back(i);

      // The translated part either lands inside J, stays outside, or
      // straddles an endpoint of J (then split again at that endpoint).
      std::vector<Segment> routed;
      if (child.current.hi <= J.lo || child.current.lo >= J.hi) {
        routed.push_back(std::move(child));
      } else {
        Scalar cl = std::max(child.current.lo, J.lo);
        Scalar ch = std::min(child.current.hi, J.hi);
        auto carve = [&](const Scalar& u, const Scalar& v) {
          if (!(u < v)) return;
          Segment part = child;
          part.current = {u, v};
          part.source = {u - child.displacement, v - child.displacement};
          routed.push_back(std::move(part));
        };
        carve(child.current.lo, cl);
        carve(cl, ch);
        carve(ch, child.current.hi);
      }

      for (Segment& part : routed) {
        if (part.current.lo >= J.lo && part.current.hi <= J.hi) {
          InducedPiece piece;
          piece.source = part.source;
          piece.return_steps = part.steps - 1;
          piece.return_word = std::move(part.word);
          piece.displacement = part.displacement;
          done.push_back(std::move(piece));
        } else {
          work.push_back(std::move(part));
        }
      }
      lo = cut;
    }
  }

  std::sort(done.begin(), done.end(),
            [](const InducedPiece& u, const InducedPiece& v) {
              return u.source.lo < v.source.lo;
            });

  // The sources must tile J exactly; any gap or overlap is a logic error
  // worth failing loudly on.
  Scalar edge = J.lo;
  for (const InducedPiece& piece : done) {
    if (piece.source.lo != edge) {
      throw Error("internal-error", "induced pieces do not tile the window");
    }
    edge = piece.source.hi;
  }
  if (edge != J.hi) {
    throw Error("internal-error", "induced pieces do not tile the window");
  }

  return InducedSystem(E, J, std::move(done));
}

}  // namespace ietlab
