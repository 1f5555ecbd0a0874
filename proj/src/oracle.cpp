#include "pt_horizon/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "pt_horizon/errors.hpp"

namespace pt_horizon::oracle {
namespace {

constexpr int kN = 4;
constexpr int kMaxSweeps = 100;

double sign_of(double magnitude, double s) {
  return s >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

double frobenius(const Matrix4& m) {
  double sum = 0.0;
  for (const auto& row : m) {
    for (double x : row) sum += x * x;
  }
  return std::sqrt(sum);
}

// Householder similarity reduction to upper Hessenberg form.
void reduce_to_hessenberg(Matrix4& a) {
  for (int k = 0; k < kN - 2; ++k) {
    double alpha = 0.0;
    for (int i = k + 1; i < kN; ++i) alpha += a[i][k] * a[i][k];
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (a[k + 1][k] > 0.0) alpha = -alpha;

    std::array<double, kN> v{};
    v[k + 1] = a[k + 1][k] - alpha;
    for (int i = k + 2; i < kN; ++i) v[i] = a[i][k];
    double vv = 0.0;
    for (int i = k + 1; i < kN; ++i) vv += v[i] * v[i];
    if (vv == 0.0) continue;

    // A <- (I - 2 v v^T / v^T v) A (I - 2 v v^T / v^T v)
    for (int j = 0; j < kN; ++j) {
      double dot = 0.0;
      for (int i = k + 1; i < kN; ++i) dot += v[i] * a[i][j];
      const double f = 2.0 * dot / vv;
      for (int i = k + 1; i < kN; ++i) a[i][j] -= f * v[i];
    }
    for (int i = 0; i < kN; ++i) {
      double dot = 0.0;
      for (int j = k + 1; j < kN; ++j) dot += a[i][j] * v[j];
      const double f = 2.0 * dot / vv;
      for (int j = k + 1; j < kN; ++j) a[i][j] -= f * v[j];
    }
    a[k + 1][k] = alpha;
    for (int i = k + 2; i < kN; ++i) a[i][k] = 0.0;
  }
}

// Eigenvalues of an upper Hessenberg matrix by the Francis double-shift QR
// iteration with deflation (EISPACK hqr scheme, one-based internally).
std::array<Complex, kN> hessenberg_qr(const Matrix4& hess) {
  double a[kN + 1][kN + 1] = {};
  for (int i = 0; i < kN; ++i) {
    for (int j = 0; j < kN; ++j) a[i + 1][j + 1] = hess[i][j];
  }
  double wr[kN + 1] = {};
  double wi[kN + 1] = {};

  double anorm = 0.0;
  for (int i = 1; i <= kN; ++i) {
    for (int j = std::max(i - 1, 1); j <= kN; ++j) anorm += std::abs(a[i][j]);
  }

  int nn = kN;
  double t = 0.0;
  while (nn >= 1) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l >= 2; --l) {
        double s = std::abs(a[l - 1][l - 1]) + std::abs(a[l][l]);
        if (s == 0.0) s = anorm;
        if (std::abs(a[l][l - 1]) + s == s) {
          a[l][l - 1] = 0.0;
          break;
        }
      }
      double x = a[nn][nn];
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn] = 0.0;
        --nn;
      } else {
        double y = a[nn - 1][nn - 1];
        double w = a[nn][nn - 1] * a[nn - 1][nn];
        if (l == nn - 1) {
          const double p = 0.5 * (y - x);
          const double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0.0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0.0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn - 1] = -z;
            wi[nn] = z;
          }
          nn -= 2;
        } else {
          if (its == kMaxSweeps) {
            fail(ErrorKind::kNumericalFailure,
                 "QR iteration did not converge within the sweep cap");
          }
          if (its == 10 || its == 20) {
            // exceptional shift
            t += x;
            for (int i = 1; i <= nn; ++i) a[i][i] -= x;
            const double s = std::abs(a[nn][nn - 1]) + std::abs(a[nn - 1][nn - 2]);
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          for (; m >= l; --m) {
            z = a[m][m];
            r = x - z;
            double s = y - z;
            p = (r * s - w) / a[m + 1][m] + a[m][m + 1];
            q = a[m + 1][m + 1] - z - r - s;
            r = a[m + 2][m + 1];
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(a[m][m - 1]) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(a[m - 1][m - 1]) + std::abs(z) +
                                            std::abs(a[m + 1][m + 1]));
            if (u + v == v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a[i][i - 2] = 0.0;
            if (i != m + 2) a[i][i - 3] = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a[k][k - 1];
              q = a[k + 1][k - 1];
              r = 0.0;
              if (k != nn - 1) r = a[k + 2][k - 1];
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s != 0.0) {
              if (k == m) {
                if (l != m) a[k][k - 1] = -a[k][k - 1];
              } else {
                a[k][k - 1] = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (int j = k; j <= nn; ++j) {
                p = a[k][j] + q * a[k + 1][j];
                if (k != nn - 1) {
                  p += r * a[k + 2][j];
                  a[k + 2][j] -= p * z;
                }
                a[k + 1][j] -= p * y;
                a[k][j] -= p * x;
              }
              const int mmin = nn < k + 3 ? nn : k + 3;
              for (int i = l; i <= mmin; ++i) {
                p = x * a[i][k] + y * a[i][k + 1];
                if (k != nn - 1) {
                  p += z * a[i][k + 2];
                  a[i][k + 2] -= p * r;
                }
                a[i][k + 1] -= p * q;
                a[i][k] -= p;
              }
            }
          }
        }
      }
    } while (l < nn - 1);
  }

  std::array<Complex, kN> out;
  for (int i = 0; i < kN; ++i) out[i] = Complex(wr[i + 1], wi[i + 1]);
  return out;
}

using CMatrix = std::array<std::array<Complex, kN>, kN>;

// Solves m x = rhs by Gaussian elimination with partial pivoting.
std::array<Complex, kN> solve(CMatrix m, std::array<Complex, kN> rhs) {
  for (int k = 0; k < kN; ++k) {
    int piv = k;
    for (int i = k + 1; i < kN; ++i) {
      if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
    }
    std::swap(m[k], m[piv]);
    std::swap(rhs[k], rhs[piv]);
    if (m[k][k] == Complex(0.0)) m[k][k] = Complex(1e-300);
    for (int i = k + 1; i < kN; ++i) {
      const Complex f = m[i][k] / m[k][k];
      for (int j = k; j < kN; ++j) m[i][j] -= f * m[k][j];
      rhs[i] -= f * rhs[k];
    }
  }
  std::array<Complex, kN> x{};
  for (int i = kN - 1; i >= 0; --i) {
    Complex s = rhs[i];
    for (int j = i + 1; j < kN; ++j) s -= m[i][j] * x[j];
    x[i] = s / m[i][i];
  }
  return x;
}

}  // namespace

double QuarticPoly::operator()(double e) const {
  double r = coefficients[4];
  for (int k = 3; k >= 0; --k) r = r * e + coefficients[k];
  return r;
}

QuarticPoly char_poly(const Hamiltonian4& h) {
  // Faddeev-LeVerrier: M_1 = I, c_{n-k} = -tr(A M_k) / k,
  // M_{k+1} = A M_k + c_{n-k} I.
  QuarticPoly poly;
  poly.coefficients[kN] = 1.0;
  Matrix4 m{};
  for (int i = 0; i < kN; ++i) m[i][i] = 1.0;
  for (int k = 1; k <= kN; ++k) {
    Matrix4 am{};
    for (int i = 0; i < kN; ++i) {
      for (int j = 0; j < kN; ++j) {
        double s = 0.0;
        for (int l = 0; l < kN; ++l) s += h.entries[i][l] * m[l][j];
        am[i][j] = s;
      }
    }
    double trace = 0.0;
    for (int i = 0; i < kN; ++i) trace += am[i][i];
    const double ck = -trace / double(k);
    poly.coefficients[kN - k] = ck;
    m = am;
    for (int i = 0; i < kN; ++i) m[i][i] += ck;
  }
  return poly;
}

double determinant(const Matrix4& m) {
  auto det3 = [&](int skip_col) {
    int cols[3];
    for (int j = 0, k = 0; j < kN; ++j) {
      if (j != skip_col) cols[k++] = j;
    }
    const auto& r1 = m[1];
    const auto& r2 = m[2];
    const auto& r3 = m[3];
    return r1[cols[0]] * (r2[cols[1]] * r3[cols[2]] - r2[cols[2]] * r3[cols[1]]) -
           r1[cols[1]] * (r2[cols[0]] * r3[cols[2]] - r2[cols[2]] * r3[cols[0]]) +
           r1[cols[2]] * (r2[cols[0]] * r3[cols[1]] - r2[cols[1]] * r3[cols[0]]);
  };
  double det = 0.0;
  for (int j = 0; j < kN; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    det += sign * m[0][j] * det3(j);
  }
  return det;
}

Spectrum eigenvalues(const Hamiltonian4& h) {
  for (const auto& row : h.entries) {
    for (double x : row) {
      if (!std::isfinite(x)) fail(ErrorKind::kInvalidInput, "matrix is not finite");
    }
  }
  Matrix4 hess = h.entries;
  reduce_to_hessenberg(hess);
  const auto values = hessenberg_qr(hess);
  double radius = 0.0;
  for (const auto& v : values) radius = std::max(radius, std::abs(v));
  return classify_spectrum(values, radius);
}

double max_eigen_residual(const Hamiltonian4& h, const Spectrum& spectrum) {
  const double scale = std::max(frobenius(h.entries), 1.0);
  double worst = 0.0;
  for (const Complex lambda : spectrum.values) {
    // Inverse iteration with a slightly perturbed shift.
    const Complex shift = lambda + Complex(1e-10 * scale, 1e-10 * scale);
    CMatrix m{};
    for (int i = 0; i < kN; ++i) {
      for (int j = 0; j < kN; ++j) m[i][j] = h.entries[i][j];
      m[i][i] -= shift;
    }
    std::array<Complex, kN> v = {1.0, 0.7, 0.5, 0.3};
    for (int it = 0; it < 3; ++it) {
      v = solve(m, v);
      double n = 0.0;
      for (const auto& x : v) n += std::norm(x);
      n = std::sqrt(n);
      for (auto& x : v) x /= n;
    }
    double res = 0.0;
    for (int i = 0; i < kN; ++i) {
      Complex s = -lambda * v[i];
      for (int j = 0; j < kN; ++j) s += h.entries[i][j] * v[j];
      res += std::norm(s);
    }
    worst = std::max(worst, std::sqrt(res));
  }
  return worst;
}

bool in_domain_oracle(const CouplingPoint& p) {
  return eigenvalues(build_circular(p)).classification == SpectrumClass::kRealSimple;
}

}  // namespace pt_horizon::oracle
