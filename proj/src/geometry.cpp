#include "plsmooth/geometry.hpp"

#include <cmath>

namespace plsmooth {

BarycentricSolve barycentric_solve(const Mat& V, const Vec& x) {
  const int p = static_cast<int>(V.rows());
  const int k = static_cast<int>(V.cols());
  Mat A(p + 1, k);
  A.topRows(p) = V;
  A.row(p).setOnes();
  Vec b(p + 1);
  b.head(p) = x;
  b(p) = 1.0;
  BarycentricSolve out;
  out.weights = A.colPivHouseholderQr().solve(b);
  out.residual = (V * out.weights - x).norm();
  return out;
}

HullProjection project_to_affine_hull(const Mat& V, const Vec& x) {
  HullProjection out;
  const int k = static_cast<int>(V.cols());
  if (k == 1) {
    out.foot = V.col(0);
    out.weights = Vec::Ones(1);
    out.distance = (x - out.foot).norm();
    return out;
  }
  Mat E(V.rows(), k - 1);
  for (int j = 1; j < k; ++j) E.col(j - 1) = V.col(j) - V.col(0);
  Vec t = E.colPivHouseholderQr().solve(x - V.col(0));
  out.foot = V.col(0) + E * t;
  out.weights = Vec::Zero(k);
  out.weights(0) = 1.0 - t.sum();
  for (int j = 1; j < k; ++j) out.weights(j) = t(j - 1);
  out.distance = (x - out.foot).norm();
  return out;
}

SimplexProjection project_to_simplex(const Mat& V, const Vec& x) {
  const int k = static_cast<int>(V.cols());
  SimplexProjection best;
  best.distance = std::numeric_limits<double>::infinity();
  // All nonempty vertex subsets; foot must land inside the face it was
  // projected to, otherwise a smaller face wins.
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> idx;
    for (int j = 0; j < k; ++j)
      if (mask & (1u << j)) idx.push_back(j);
    Mat F(V.rows(), idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) F.col(j) = V.col(idx[j]);
    HullProjection hp = project_to_affine_hull(F, x);
    bool inside = true;
    for (int j = 0; j < hp.weights.size(); ++j)
      if (hp.weights(j) < -tol::weight_neg) inside = false;
    if (!inside) continue;
    if (hp.distance < best.distance) {
      best.distance = hp.distance;
      best.foot = hp.foot;
      best.weights = Vec::Zero(k);
      for (std::size_t j = 0; j < idx.size(); ++j)
        best.weights(idx[j]) = hp.weights(j);
    }
  }
  return best;
}

double simplex_volume(const Mat& V) {
  const int k = static_cast<int>(V.cols()) - 1;
  if (k == 0) return 0.0;
  Mat E(V.rows(), k);
  for (int j = 0; j < k; ++j) E.col(j) = V.col(j + 1) - V.col(0);
  Mat G = E.transpose() * E;
  double det = G.determinant();
  if (det < 0.0) det = 0.0;
  double vol = std::sqrt(det);
  for (int j = 2; j <= k; ++j) vol /= static_cast<double>(j);
  return vol;
}

double simplex_diameter(const Mat& V) {
  double d = 0.0;
  for (int i = 0; i < V.cols(); ++i)
    for (int j = i + 1; j < V.cols(); ++j)
      d = std::max(d, (V.col(i) - V.col(j)).norm());
  return d;
}

bool affinely_independent(const Mat& V, double tolerance) {
  const int k = static_cast<int>(V.cols()) - 1;
  if (k == 0) return true;
  Mat E(V.rows(), k);
  for (int j = 0; j < k; ++j) E.col(j) = V.col(j + 1) - V.col(0);
  Eigen::JacobiSVD<Mat> svd(E);
  return svd.singularValues().minCoeff() > tolerance;
}

Vec sample_simplex_weights(int nverts, Rng& rng) {
  Vec w(nverts);
  double s = 0.0;
  for (int i = 0; i < nverts; ++i) {
    double u = rng.uniform();
    if (u <= 0.0) u = 0x1.0p-53;
    w(i) = -std::log(u);
    s += w(i);
  }
  return w / s;
}

Vec sample_simplex_point(const Mat& V, Rng& rng) {
  return V * sample_simplex_weights(static_cast<int>(V.cols()), rng);
}

}  // namespace plsmooth
