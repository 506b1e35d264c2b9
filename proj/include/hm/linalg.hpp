#pragma once

#include <array>
#include <stdexcept>
#include <vector>

namespace hm {

struct IllConditioned : std::runtime_error {
  explicit IllConditioned(double res)
      : std::runtime_error("linear solve residual " + std::to_string(res) + " above tolerance") {}
};
struct SingularModel : std::runtime_error {
  SingularModel() : std::runtime_error("model matrix lost positive definiteness") {}
};

// Row-major dense n x n matrix, n small (10 here).
struct Mat {
  int n = 0;
  std::vector<double> a;

  Mat() = default;
  explicit Mat(int size) : n(size), a(size * size, 0.0) {}
  double& operator()(int i, int j) { return a[i * n + j]; }
  double operator()(int i, int j) const { return a[i * n + j]; }
};

std::vector<double> mat_vec(const Mat& A, const std::vector<double>& x);
double det_lu(Mat A);
// Solve A x = b by LU with partial pivoting.
std::vector<double> solve_lu(Mat A, std::vector<double> b);
// Cholesky factorization; returns false if A is not positive definite.
bool cholesky(const Mat& A, Mat& L);
std::vector<double> cholesky_solve(const Mat& L, std::vector<double> b);
// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_eigenvalues(Mat A, int sweeps = 50);

double norm2(const std::vector<double>& v);

} // namespace hm
