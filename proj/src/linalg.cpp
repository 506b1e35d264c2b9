#include "hm/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace hm {

std::vector<double> mat_vec(const Mat& A, const std::vector<double>& x) {
  std::vector<double> y(A.n, 0.0);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) y[i] += A(i, j) * x[j];
  return y;
}

namespace {

// LU with partial pivoting in place; returns permutation sign, 0 if singular.
int lu_factor(Mat& A, std::vector<int>& piv) {
  int n = A.n, sign = 1;
  piv.resize(n);
  for (int i = 0; i < n; ++i) piv[i] = i;
  for (int k = 0; k < n; ++k) {
    int imax = k;
    double amax = std::abs(A(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(A(i, k)) > amax) { amax = std::abs(A(i, k)); imax = i; }
    if (amax == 0.0) return 0;
    if (imax != k) {
      for (int j = 0; j < n; ++j) std::swap(A.a[k * n + j], A.a[imax * n + j]);
      std::swap(piv[k], piv[imax]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      A(i, k) /= A(k, k);
      for (int j = k + 1; j < n; ++j) A(i, j) -= A(i, k) * A(k, j);
    }
  }
  return sign;
}

} // namespace

double det_lu(Mat A) {
  std::vector<int> piv;
  int sign = lu_factor(A, piv);
  if (sign == 0) return 0.0;
  double d = sign;
  for (int i = 0; i < A.n; ++i) d *= A(i, i);
  return d;
}

std::vector<double> solve_lu(Mat A, std::vector<double> b) {
  int n = A.n;
  std::vector<int> piv;
  if (lu_factor(A, piv) == 0) throw SingularModel();
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[piv[i]];
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= A(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= A(i, j) * x[j];
    x[i] /= A(i, i);
  }
  return x;
}

bool cholesky(const Mat& A, Mat& L) {
  int n = A.n;
  L = Mat(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = A(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      if (i == j) {
        if (s <= 0.0) return false;
        L(i, i) = std::sqrt(s);
      } else {
        L(i, j) = s / L(j, j);
      }
    }
  }
  return true;
}

std::vector<double> cholesky_solve(const Mat& L, std::vector<double> b) {
  int n = L.n;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) b[i] -= L(i, k) * b[k];
    b[i] /= L(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) b[i] -= L(k, i) * b[k];
    b[i] /= L(i, i);
  }
  return b;
}

std::vector<double> jacobi_eigenvalues(Mat A, int sweeps) {
  int n = A.n;
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += A(i, j) * A(i, j);
    if (off < 1e-300) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(A(p, q)) < 1e-300) continue;
        double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = A(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

} // namespace hm
