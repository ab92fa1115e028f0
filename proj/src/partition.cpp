#include "plsmooth/partition.hpp"

namespace plsmooth {

namespace {

// Profile of a marginality ratio: 1 out to the backoff scale, smoothly 0 at
// ratio 1. A point is a member of a piece at scale r exactly when every such
// ratio stays below r, so the bump vanishes precisely off the open piece
// while staying saturated on the backoff-scaled piece. The construction
// covers the polyhedron by backoff-scaled pieces, which bounds the
// normalizing sum below by 1 there.
double shell(const BumpProfile& profile, double ratio) {
  if (ratio >= 1.0) return 0.0;
  double u = (ratio - overlap_backoff) / (1.0 - overlap_backoff);
  if (u <= 0.0) return 1.0;
  return profile.value(profile.a + u * (profile.b - profile.a));
}

}  // namespace

double PartitionOfUnity::raw(int s, const Vec& x) const {
  const Covering& C = *covering;
  const CoveringPiece& p = C.pieces[s];
  if (p.base_case) {
    const Vec& v = C.K.vertex(C.K.simplex(s)[0]);
    return shell(profile, (x - v).norm() / p.eta_prime);
  }
  HullProjection pr = project_to_affine_hull(C.K.simplex_matrix(s), x);
  double out = shell(profile, (x - pr.foot).norm() / p.eta_prime);
  if (out == 0.0) return 0.0;
  const double c = p.epsilon / static_cast<double>(pr.weights.size());
  for (int i = 0; i < pr.weights.size(); ++i) {
    if (pr.weights(i) <= c) return 0.0;
    out *= shell(profile, c / pr.weights(i));
    if (out == 0.0) return 0.0;
  }
  return out;
}

double PartitionOfUnity::total(const Vec& x) const {
  double sum = 0.0;
  for (int s = 0; s < covering->K.num_simplices(); ++s) sum += raw(s, x);
  if (sum < 1e-14)
    throw error("covering defect: partition normalization underflow off the covered set");
  return sum;
}

Vec PartitionOfUnity::theta_gradient(int s, const Vec& x, double step) const {
  Vec g(x.size());
  for (int d = 0; d < x.size(); ++d) {
    Vec xp = x, xm = x;
    xp(d) += step;
    xm(d) -= step;
    g(d) = (theta(s, xp) - theta(s, xm)) / (2.0 * step);
  }
  return g;
}

std::vector<std::pair<int, double>> PartitionOfUnity::weights(const Vec& x) const {
  std::vector<std::pair<int, double>> out;
  double sum = 0.0;
  for (int s = 0; s < covering->K.num_simplices(); ++s) {
    double r = raw(s, x);
    if (r > 0.0) {
      out.push_back({s, r});
      sum += r;
    }
  }
  if (sum < 1e-14)
    throw error("covering defect: partition normalization underflow off the covered set");
  for (auto& [s, w] : out) w /= sum;
  return out;
}

PartitionOfUnity partition_of_unity(std::shared_ptr<const Covering> C, BumpProfile profile) {
  if (!C) throw error("partition requires a covering");
  PartitionOfUnity P;
  P.covering = std::move(C);
  P.profile = profile;
  return P;
}

}  // namespace plsmooth
