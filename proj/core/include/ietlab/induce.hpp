#pragma once

#include <vector>

#include "ietlab/iet.hpp"

namespace ietlab {

// One continuity piece of a first-return map. return_steps counts the
// strictly-outside iterates: E^j(source) misses J for 1 <= j <= return_steps
// and E^{return_steps+1}(source) lands inside J. return_word holds the
// return_steps+1 symbols visited by x, E(x), ..., E^{return_steps}(x).
struct InducedPiece {
  HalfOpen source;
  long return_steps = 0;
  std::vector<int> return_word;
  Scalar displacement;  // E^{return_steps+1} = x + displacement on source

  HalfOpen image() const {
    return {source.lo + displacement, source.hi + displacement};
  }
};

class InducedSystem {
 public:
  InducedSystem(Iet parent, HalfOpen window, std::vector<InducedPiece> pieces);

  const Iet& parent() const { return parent_; }
  const HalfOpen& window() const { return window_; }
  const std::vector<InducedPiece>& pieces() const { return pieces_; }
  int piece_count() const { return static_cast<int>(pieces_.size()); }
  const InducedPiece& piece(int k) const { return pieces_.at(k - 1); }  // 1-based

  // The return map assembled as an exchange on the window.
  const Iet& induced_iet() const { return induced_; }

  // Sum of (return_steps + 1) * |piece| over all pieces; equals the parent
  // domain length exactly when the orbit of the window tiles it.
  Scalar orbit_tile_measure() const;

 private:
  Iet parent_;
  HalfOpen window_;
  std::vector<InducedPiece> pieces_;
  Iet induced_;
};

// First-return map of E onto J = [c, d) with [c, d) contained in the domain.
// Pieces are maximal intervals with constant return time and visited-interval
// word, found by exact forward chasing with splits at discontinuities and at
// the window's endpoints. Throws NonReturnError if a piece fails to come back
// within step_cap applications of E.
InducedSystem induce(const Iet& E, const HalfOpen& J,
                     long step_cap = 10'000'000);

}  // namespace ietlab
