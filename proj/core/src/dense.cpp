#include "spatialgen/dense.hpp"

#include <cmath>
#include <string>

#include "spatialgen/errors.hpp"

namespace spatialgen {

namespace {

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvalidParameter(std::string(who) + ": matrix must be square and nonempty");
  }
  if (static_cast<std::size_t>(m.rows()) > kDenseMaxDim) {
    throw InvalidParameter(std::string(who) + ": dimension " + std::to_string(m.rows()) +
                           " exceeds the dense limit " + std::to_string(kDenseMaxDim) +
                           "; use the circulant embedding path for large stationary fields");
  }
}

Vector std_normal_vector(Eigen::Index n, RngStream& stream) {
  Vector z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = stream.std_normal();
  return z;
}

}  // namespace

Matrix cholesky_lower(const Matrix& m) {
  require_square(m, "cholesky_lower");
  const Eigen::Index n = m.rows();
  const double tol = 1e-12 * m.diagonal().maxCoeff();
  // U = L^T, column-major: column j of U holds row j of L, so every inner
  // product below runs over contiguous memory.
  Matrix u = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double pivot = m(j, j) - u.col(j).head(j).squaredNorm();
    if (!(pivot > tol)) throw FactorizationError(static_cast<std::size_t>(j), pivot);
    const double d = std::sqrt(pivot);
    u(j, j) = d;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      u(j, i) = (m(i, j) - u.col(i).head(j).dot(u.col(j).head(j))) / d;
    }
  }
  return u.transpose();
}

void MvnSpec::validate() const {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw InvalidParameter("MvnSpec: matrix must be square and nonempty");
  }
  if (mean.size() != matrix.rows()) throw InvalidParameter("MvnSpec: mean length mismatch");
  const double scale = matrix.cwiseAbs().maxCoeff();
  if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidParameter("MvnSpec: matrix is not symmetric");
  }
}

DenseGaussianSampler::DenseGaussianSampler(MvnSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  factor_ = cholesky_lower(spec_.matrix);
}

Vector DenseGaussianSampler::apply(const Vector& z) const {
  if (z.size() != spec_.mean.size()) throw InvalidParameter("apply: noise length mismatch");
  if (spec_.kind == MatrixKind::Covariance) {
    return spec_.mean + factor_.triangularView<Eigen::Lower>() * z;
  }
  // back-substitution with D^T (upper triangular)
  return spec_.mean + factor_.transpose().triangularView<Eigen::Upper>().solve(z);
}

Vector DenseGaussianSampler::sample(RngStream& stream) const {
  return apply(std_normal_vector(spec_.mean.size(), stream));
}

Vector sample_mvn_cov(const MvnSpec& spec, RngStream& stream) {
  if (spec.kind != MatrixKind::Covariance) {
    throw InvalidParameter("sample_mvn_cov: spec holds a precision matrix");
  }
  return DenseGaussianSampler(spec).sample(stream);
}

Vector sample_mvn_prec(const MvnSpec& spec, RngStream& stream) {
  if (spec.kind != MatrixKind::Precision) {
    throw InvalidParameter("sample_mvn_prec: spec holds a covariance matrix");
  }
  return DenseGaussianSampler(spec).sample(stream);
}

Vector sample_complex_sqrt(const Matrix& b_re, const Matrix& b_im, RngStream& stream) {
  if (b_re.rows() != b_im.rows() || b_re.cols() != b_im.cols() || b_re.rows() != b_re.cols()) {
    throw InvalidParameter("sample_complex_sqrt: B_re and B_im must be square of equal size");
  }
  const Eigen::Index n = b_re.cols();
  Vector z1(n), z2(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto [re, im] = stream.complex_std_normal();
    z1[i] = re;
    z2[i] = im;
  }
  return b_re * z1 - b_im * z2;
}

Matrix build_grid_covariance(const Grid2D& grid,
                             const std::function<double(double, double)>& rho) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Matrix omega(n, n);
  for (std::size_t a = 0; a < grid.size(); ++a) {
    const double xa = grid.x(a % grid.nx), ya = grid.y(a / grid.nx);
    for (std::size_t b = 0; b <= a; ++b) {
      const double v = rho(xa - grid.x(b % grid.nx), ya - grid.y(b / grid.nx));
      omega(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
      omega(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = v;
    }
  }
  return omega;
}

std::vector<std::pair<int, int>> disc_offsets(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidParameter("disc_offsets: r must be >= 0");
  const int reach = static_cast<int>(std::floor(r));
  std::vector<std::pair<int, int>> out;
  for (int v = -reach; v <= reach; ++v) {
    for (int u = -reach; u <= reach; ++u) {
      if (static_cast<double>(u * u + v * v) <= r * r) out.emplace_back(u, v);
    }
  }
  return out;
}

Field moving_average_field(const Field& noise, double r) {
  const auto offsets = disc_offsets(r);
  const std::size_t reach = static_cast<std::size_t>(std::floor(r));
  const std::size_t span = 2 * reach + 1;
  if (span > noise.nx() || span > noise.ny()) {
    throw InvalidParameter("moving_average_field: disc of radius " + std::to_string(r) +
                           " does not fit in a " + std::to_string(noise.nx()) + "x" +
                           std::to_string(noise.ny()) + " grid");
  }
  const Grid2D& g = noise.grid();
  Grid2D out_grid(g.nx - 2 * reach, g.ny - 2 * reach, g.dx, g.dy,
                  g.origin_x + static_cast<double>(reach) * g.dx,
                  g.origin_y + static_cast<double>(reach) * g.dy);
  Field out(out_grid);
  const double inv = 1.0 / static_cast<double>(offsets.size());
  for (std::size_t j = 0; j < out_grid.ny; ++j) {
    for (std::size_t i = 0; i < out_grid.nx; ++i) {
      double sum = 0.0;
      for (const auto& [u, v] : offsets) {
        sum += noise(static_cast<std::size_t>(static_cast<long>(j + reach) + v),
                     static_cast<std::size_t>(static_cast<long>(i + reach) + u));
      }
      out(j, i) = sum * inv;
    }
  }
  return out;
}

}  // namespace spatialgen
