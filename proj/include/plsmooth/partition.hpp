#pragma once

#include "plsmooth/bump.hpp"
#include "plsmooth/shrink_widen.hpp"

namespace plsmooth {

// Smooth partition of unity subordinate to a covering: one bump per piece,
// normalized by the sum. A piece's bump is a product of shell profiles, one
// of the tube distance ratio and one per vertex of the weight threshold
// ratio; each is 1 out to the backoff-scaled piece and 0 off the full piece,
// so the support is exactly the piece's open set and the normalizing sum is
// at least 1 wherever the backoff-scaled pieces cover.
struct PartitionOfUnity {
  std::shared_ptr<const Covering> covering;
  BumpProfile profile;

  // Unnormalized bump; exactly 0 outside piece s.
  double raw(int s, const Vec& x) const;
  // Sum of all bumps; throws a covering-defect error below 1e-14.
  double total(const Vec& x) const;
  double theta(int s, const Vec& x) const { return raw(s, x) / total(x); }
  // Central finite differences; the bumps are compositions of smooth pieces.
  Vec theta_gradient(int s, const Vec& x, double step = 1e-6) const;
  // All (piece, theta) with theta > 0; the weights sum to 1.
  std::vector<std::pair<int, double>> weights(const Vec& x) const;
};

PartitionOfUnity partition_of_unity(std::shared_ptr<const Covering> C,
                                    BumpProfile profile = {});

}  // namespace plsmooth
