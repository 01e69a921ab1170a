#pragma once

// Brute-force reference implementations used only by the test suites. They
// deliberately avoid the library's code paths: explicit covariance matrices,
// a cyclic Jacobi eigensolver, one-line distance formulas and a full stable
// sort followed by an independent vote.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major, rows of equal length

// --- distances --------------------------------------------------------------

inline double euclidean(const Vec& x, const Vec& y) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

inline double city_block(const Vec& x, const Vec& y) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::fabs(x[i] - y[i]);
  return s;
}

inline double canberra(const Vec& x, const Vec& y) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0 && y[i] == 0) continue;
    s += std::fabs(x[i] - y[i]) / (std::fabs(x[i]) + std::fabs(y[i]));
  }
  return s;
}

struct ZeroNorm : std::runtime_error {
  ZeroNorm() : std::runtime_error("zero norm") {}
};

inline double cosine(const Vec& x, const Vec& y) {
  const double xy = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
  const double xx = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
  const double yy = std::inner_product(y.begin(), y.end(), y.begin(), 0.0);
  if (xx == 0 || yy == 0) throw ZeroNorm();
  return std::min(2.0, std::max(0.0, 1.0 - xy / std::sqrt(xx * yy)));
}

/// 0 euclidean, 1 cityblock, 2 canberra, 3 cosine (MetricKind order).
inline double distance(int kind, const Vec& x, const Vec& y) {
  switch (kind) {
    case 0: return euclidean(x, y);
    case 1: return city_block(x, y);
    case 2: return canberra(x, y);
    default: return cosine(x, y);
  }
}

// --- symmetric eigendecomposition (cyclic Jacobi) ----------------------------

struct Eigen {
  Vec values;  // descending
  Mat vectors; // vectors[i] is the unit eigenvector for values[i]
};

inline Eigen jacobi_eigen(Mat a) {
  const std::size_t n = a.size();
  Mat v(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a[i][i] > a[j][j]; });
  Eigen out;
  for (auto i : order) {
    out.values.push_back(a[i][i]);
    Vec col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v[k][i];
    out.vectors.push_back(col);
  }
  return out;
}

struct Pca {
  Vec mean;
  Vec eigenvalues;  // all of them, descending
  Vec ratios;       // all of them
  Mat axes;         // all eigenvectors
  std::size_t m = 0;
};

/// Explicit sample covariance (divisor n-1) + Jacobi.
inline Pca pca(const Mat& rows, double threshold) {
  const std::size_t n = rows.size(), d = rows[0].size();
  Pca out;
  out.mean.assign(d, 0.0);
  for (const auto& r : rows)
    for (std::size_t j = 0; j < d; ++j) out.mean[j] += r[j] / static_cast<double>(n);
  Mat cov(d, Vec(d, 0.0));
  for (const auto& r : rows)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) cov[a][b] += (r[a] - out.mean[a]) * (r[b] - out.mean[b]) / (n - 1.0);
  auto eig = jacobi_eigen(cov);
  double total = 0;
  for (double w : eig.values) total += w;
  out.eigenvalues = eig.values;
  out.axes = eig.vectors;
  for (double w : eig.values) out.ratios.push_back(w / total);
  double cum = 0;
  const std::size_t cap = std::min(n - 1, d);
  for (std::size_t i = 0; i < cap; ++i) {
    cum += out.ratios[i];
    out.m = i + 1;
    if (cum >= threshold) break;
  }
  return out;
}

// --- k-NN --------------------------------------------------------------------

struct Pick {
  std::size_t index;
  double distance;
  int label;
};

struct Vote {
  int predicted;
  std::vector<std::size_t> votes;
  std::vector<Pick> neighbors;
};

/// Computes all n distances, stable-sorts by distance, takes k, votes with
/// (count desc, distance sum asc, class asc).
inline Vote knn(const Mat& db, const std::vector<int>& labels, const Vec& query, std::size_t k, int kind,
                int n_classes) {
  std::vector<Pick> all;
  for (std::size_t i = 0; i < db.size(); ++i) all.push_back({i, distance(kind, db[i], query), labels[i]});
  std::stable_sort(all.begin(), all.end(), [](const Pick& a, const Pick& b) { return a.distance < b.distance; });
  all.resize(k);
  Vote v;
  v.neighbors = all;
  v.votes.assign(n_classes, 0);
  std::vector<double> sums(n_classes, 0.0);
  for (const auto& p : all) {
    v.votes[p.label] += 1;
    sums[p.label] += p.distance;
  }
  std::vector<int> classes(n_classes);
  std::iota(classes.begin(), classes.end(), 0);
  std::stable_sort(classes.begin(), classes.end(), [&](int a, int b) {
    if (v.votes[a] != v.votes[b]) return v.votes[a] > v.votes[b];
    return sums[a] < sums[b];
  });
  v.predicted = classes[0];
  return v;
}

// --- generators --------------------------------------------------------------

inline Vec random_vec(std::mt19937_64& rng, std::size_t d, double lo = -1, double hi = 1) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(d);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace oracle
