#include "lgt/group.hpp"

#include <cmath>
#include <numbers>

namespace lgt {

namespace {

constexpr double pi = std::numbers::pi;

double factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(41);
    t[0] = 1.0;
    for (int i = 1; i <= 40; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (n < 0 || n > 40) throw internal_error("factorial argument out of range");
  return table[n];
}

double fold(double x, double period) {
  double y = std::fmod(x, period);
  if (y < 0) y += period;
  // fmod can return the period itself after the correction when x is a tiny
  // negative number; normalize that edge.
  if (y >= period) y -= period;
  return y;
}

void check_element(const GroupSpec& spec, const GroupElement& g) {
  if (g.kind != spec.kind)
    throw config_error("group element incompatible with group spec");
  switch (spec.kind) {
    case GroupKind::cyclic_zn:
      if (g.k < 0 || g.k >= spec.n)
        throw config_error("cyclic group element index out of range");
      break;
    case GroupKind::truncated_u1:
      if (!(g.phi >= 0.0 && g.phi < 2 * pi))
        throw config_error("u1 angle outside [0, 2pi)");
      break;
    case GroupKind::truncated_su2:
      if (!(g.alpha >= 0.0 && g.alpha < 2 * pi) ||
          !(g.beta >= 0.0 && g.beta <= pi) ||
          !(g.gamma >= 0.0 && g.gamma < 4 * pi))
        throw config_error("invalid Euler-angle range");
      break;
  }
}

// Offset of the (m, n) block for doubled spin tj inside the canonical
// SU(2) link basis.
int block_offset(int tj) {
  int off = 0;
  for (int t = 0; t < tj; ++t) off += (t + 1) * (t + 1);
  return off;
}

int su2_index(int tj, int tm, int tn) {
  int d = tj + 1;
  int im = (tj - tm) / 2;  // m descending
  int in = (tj - tn) / 2;
  return block_offset(tj) + im * d + in;
}

Eigen::Matrix2cd su2_matrix(const GroupElement& g) {
  double c = std::cos(g.beta / 2), s = std::sin(g.beta / 2);
  cplx ea = std::exp(cplx(0, -g.alpha / 2));
  cplx eg = std::exp(cplx(0, -g.gamma / 2));
  Eigen::Matrix2cd u;
  u << ea * eg * c, -ea * std::conj(eg) * s, std::conj(ea) * eg * s,
      std::conj(ea) * std::conj(eg) * c;
  return u;
}

// Inverse of su2_matrix: recover z-y-z angles in the canonical ranges.
// Exact on SU(2) including the center, because gamma's 4pi range lifts the
// double cover.
GroupElement euler_from_su2(const Eigen::Matrix2cd& u) {
  double c = std::min(1.0, std::abs(u(0, 0)));
  double s = std::min(1.0, std::abs(u(1, 0)));
  double beta = 2.0 * std::atan2(s, c);
  double sum, diff;  // sum = alpha + gamma, diff = alpha - gamma
  if (s < 1e-12) {
    sum = -2.0 * std::arg(u(0, 0));
    diff = 0.0;
    beta = 0.0;
  } else if (c < 1e-12) {
    sum = 0.0;
    diff = 2.0 * std::arg(u(1, 0));
    beta = pi;
  } else {
    sum = -2.0 * std::arg(u(0, 0));
    diff = 2.0 * std::arg(u(1, 0));
  }
  double alpha = fold((sum + diff) / 2.0, 2 * pi);
  double gamma = fold(sum - alpha, 4 * pi);
  return GroupElement::su2(alpha, beta, gamma);
}

// Wigner's little-d via the explicit factorial sum; rows m' and columns m
// both descend from +j.  All factorial arguments are integers by parity.
Eigen::MatrixXcd wigner_d_small(int tj, double beta) {
  int d = tj + 1;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  double cb = std::cos(beta / 2), sb = std::sin(beta / 2);
  for (int im = 0; im < d; ++im) {
    int tmp = tj - 2 * im;  // doubled m', row
    for (int in = 0; in < d; ++in) {
      int tm = tj - 2 * in;  // doubled m, column
      int jpmp = (tj + tmp) / 2, jmmp = (tj - tmp) / 2;
      int jpm = (tj + tm) / 2, jmm = (tj - tm) / 2;
      int dmm = (tmp - tm) / 2;  // m' - m
      double pref = std::sqrt(factorial(jpmp) * factorial(jmmp) *
                              factorial(jpm) * factorial(jmm));
      double sum = 0.0;
      for (int k = std::max(0, -dmm); k <= std::min(jpm, jmmp); ++k) {
        double denom = factorial(jpm - k) * factorial(k) *
                       factorial(jmmp - k) * factorial(dmm + k);
        int cos_exp = (2 * tj + tm - tmp) / 2 - 2 * k;
        int sin_exp = dmm + 2 * k;
        sum += ((dmm + k) % 2 == 0 ? 1.0 : -1.0) * std::pow(cb, cos_exp) *
               std::pow(sb, sin_exp) / denom;
      }
      out(im, in) = pref * sum;
    }
  }
  return out;
}

}  // namespace

GroupSpec GroupSpec::cyclic(int n) {
  if (n < 2) throw config_error("cyclic group order must be >= 2");
  GroupSpec s;
  s.kind = GroupKind::cyclic_zn;
  s.n = n;
  return s;
}

GroupSpec GroupSpec::u1(int cutoff) {
  if (cutoff < 1) throw config_error("u1 cutoff must be >= 1");
  GroupSpec s;
  s.kind = GroupKind::truncated_u1;
  s.cutoff = cutoff;
  return s;
}

GroupSpec GroupSpec::su2(int twice_jmax) {
  if (twice_jmax < 1 || twice_jmax > 3)
    throw config_error("su2 doubled spin cutoff must be 1, 2 or 3");
  GroupSpec s;
  s.kind = GroupKind::truncated_su2;
  s.twice_jmax = twice_jmax;
  return s;
}

int GroupSpec::link_dim() const {
  switch (kind) {
    case GroupKind::cyclic_zn:
      return n;
    case GroupKind::truncated_u1:
      return 2 * cutoff + 1;
    case GroupKind::truncated_su2:
      return block_offset(twice_jmax + 1);
  }
  throw internal_error("unreachable group kind");
}

std::string GroupSpec::name() const {
  switch (kind) {
    case GroupKind::cyclic_zn:
      return "zn(" + std::to_string(n) + ")";
    case GroupKind::truncated_u1:
      return "u1(" + std::to_string(cutoff) + ")";
    case GroupKind::truncated_su2:
      return "su2(" + std::to_string(twice_jmax) + "/2)";
  }
  throw internal_error("unreachable group kind");
}

bool operator==(const GroupSpec& a, const GroupSpec& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case GroupKind::cyclic_zn:
      return a.n == b.n;
    case GroupKind::truncated_u1:
      return a.cutoff == b.cutoff;
    case GroupKind::truncated_su2:
      return a.twice_jmax == b.twice_jmax;
  }
  return false;
}

bool operator==(const IrrepLabel& a, const IrrepLabel& b) {
  return a.j == b.j && a.dim == b.dim;
}

std::vector<IrrepLabel> irreps(const GroupSpec& spec) {
  std::vector<IrrepLabel> out;
  switch (spec.kind) {
    case GroupKind::cyclic_zn:
      for (int j = 0; j < spec.n; ++j) out.push_back({j, 1});
      break;
    case GroupKind::truncated_u1:
      for (int j = -spec.cutoff; j <= spec.cutoff; ++j) out.push_back({j, 1});
      break;
    case GroupKind::truncated_su2:
      for (int tj = 0; tj <= spec.twice_jmax; ++tj)
        out.push_back({tj, tj + 1});
      break;
  }
  return out;
}

IrrepLabel fundamental_irrep(const GroupSpec& spec) {
  if (spec.kind == GroupKind::truncated_su2) return {1, 2};
  return {1, 1};
}

std::vector<RepBasisState> rep_basis(const GroupSpec& spec) {
  std::vector<RepBasisState> out;
  if (spec.kind == GroupKind::truncated_su2) {
    for (int tj = 0; tj <= spec.twice_jmax; ++tj)
      for (int tm = tj; tm >= -tj; tm -= 2)
        for (int tn = tj; tn >= -tj; tn -= 2)
          out.push_back({{tj, tj + 1}, tm, tn});
  } else {
    for (const auto& ir : irreps(spec)) out.push_back({ir, 0, 0});
  }
  return out;
}

GroupElement GroupElement::zn(int k) {
  GroupElement g;
  g.kind = GroupKind::cyclic_zn;
  g.k = k;
  return g;
}

GroupElement GroupElement::u1(double phi) {
  GroupElement g;
  g.kind = GroupKind::truncated_u1;
  g.phi = phi;
  return g;
}

GroupElement GroupElement::su2(double alpha, double beta, double gamma) {
  GroupElement g;
  g.kind = GroupKind::truncated_su2;
  g.alpha = alpha;
  g.beta = beta;
  g.gamma = gamma;
  return g;
}

GroupElement identity_element(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupKind::cyclic_zn:
      return GroupElement::zn(0);
    case GroupKind::truncated_u1:
      return GroupElement::u1(0.0);
    case GroupKind::truncated_su2:
      return GroupElement::su2(0.0, 0.0, 0.0);
  }
  throw internal_error("unreachable group kind");
}

GroupElement compose(const GroupSpec& spec, const GroupElement& a,
                     const GroupElement& b) {
  check_element(spec, a);
  check_element(spec, b);
  switch (spec.kind) {
    case GroupKind::cyclic_zn:
      return GroupElement::zn((a.k + b.k) % spec.n);
    case GroupKind::truncated_u1:
      return GroupElement::u1(fold(a.phi + b.phi, 2 * pi));
    case GroupKind::truncated_su2:
      return euler_from_su2(su2_matrix(a) * su2_matrix(b));
  }
  throw internal_error("unreachable group kind");
}

GroupElement inverse(const GroupSpec& spec, const GroupElement& g) {
  check_element(spec, g);
  switch (spec.kind) {
    case GroupKind::cyclic_zn:
      return GroupElement::zn((spec.n - g.k) % spec.n);
    case GroupKind::truncated_u1:
      return GroupElement::u1(fold(-g.phi, 2 * pi));
    case GroupKind::truncated_su2:
      return euler_from_su2(su2_matrix(g).adjoint());
  }
  throw internal_error("unreachable group kind");
}

GroupElement random_element(const GroupSpec& spec, std::mt19937_64& rng) {
  switch (spec.kind) {
    case GroupKind::cyclic_zn: {
      std::uniform_int_distribution<int> dist(0, spec.n - 1);
      return GroupElement::zn(dist(rng));
    }
    case GroupKind::truncated_u1: {
      std::uniform_real_distribution<double> dist(0.0, 2 * pi);
      return GroupElement::u1(fold(dist(rng), 2 * pi));
    }
    case GroupKind::truncated_su2: {
      std::normal_distribution<double> dist(0.0, 1.0);
      double q0 = dist(rng), q1 = dist(rng), q2 = dist(rng), q3 = dist(rng);
      double norm = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
      if (norm < 1e-12) return identity_element(spec);
      q0 /= norm;
      q1 /= norm;
      q2 /= norm;
      q3 /= norm;
      Eigen::Matrix2cd u;
      u << cplx(q0, -q3), cplx(-q2, -q1), cplx(q2, -q1), cplx(q0, q3);
      return euler_from_su2(u);
    }
  }
  throw internal_error("unreachable group kind");
}

LinkOperator::LinkOperator(Eigen::MatrixXcd m, bool diag)
    : mat(std::move(m)), diagonal(diag) {}

LinkOperator LinkOperator::operator+(const LinkOperator& o) const {
  return LinkOperator(mat + o.mat, diagonal && o.diagonal);
}

LinkOperator LinkOperator::operator*(const LinkOperator& o) const {
  return LinkOperator(mat * o.mat, diagonal && o.diagonal);
}

LinkOperator LinkOperator::operator*(cplx s) const {
  return LinkOperator(mat * s, diagonal);
}

LinkOperator LinkOperator::adjoint() const {
  return LinkOperator(mat.adjoint(), diagonal);
}

LinkOperator LinkOperator::identity(int dim) {
  return LinkOperator(Eigen::MatrixXcd::Identity(dim, dim), true);
}

LinkOperator LinkOperator::from_diagonal(const Eigen::VectorXcd& d) {
  return LinkOperator(Eigen::MatrixXcd(d.asDiagonal()), true);
}

LinkOperator build_theta(const GroupSpec& spec, const GroupElement& g,
                         Side side) {
  check_element(spec, g);
  int dim = spec.link_dim();
  switch (spec.kind) {
    case GroupKind::cyclic_zn: {
      // Abelian: left and right multiplication coincide.
      Eigen::VectorXcd d(dim);
      for (int j = 0; j < dim; ++j)
        d(j) = std::exp(cplx(0, -2 * pi * j * g.k / spec.n));
      return LinkOperator::from_diagonal(d);
    }
    case GroupKind::truncated_u1: {
      Eigen::VectorXcd d(dim);
      for (int idx = 0; idx < dim; ++idx) {
        int j = idx - spec.cutoff;
        d(idx) = std::exp(cplx(0, g.phi * j));
      }
      return LinkOperator::from_diagonal(d);
    }
    case GroupKind::truncated_su2: {
      // right: <j m p | Theta_g   | j m n> = D^j_{p n}(g)
      // left : <j p n | Theta~_g  | j m n> = D^j_{m p}(g)
      Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
      for (int tj = 0; tj <= spec.twice_jmax; ++tj) {
        Eigen::MatrixXcd D = wigner_D(tj, g);
        for (int tm = tj; tm >= -tj; tm -= 2)
          for (int tn = tj; tn >= -tj; tn -= 2)
            for (int tp = tj; tp >= -tj; tp -= 2) {
              if (side == Side::right)
                out(su2_index(tj, tm, tp), su2_index(tj, tm, tn)) =
                    D((tj - tp) / 2, (tj - tn) / 2);
              else
                out(su2_index(tj, tp, tn), su2_index(tj, tm, tn)) =
                    D((tj - tm) / 2, (tj - tp) / 2);
            }
      }
      return LinkOperator(out, false);
    }
  }
  throw internal_error("unreachable group kind");
}

std::vector<LinkOperator> build_electric(const GroupSpec& spec) {
  int dim = spec.link_dim();
  switch (spec.kind) {
    case GroupKind::cyclic_zn: {
      Eigen::VectorXcd d(dim);
      for (int j = 0; j < dim; ++j) d(j) = j;
      return {LinkOperator::from_diagonal(d)};
    }
    case GroupKind::truncated_u1: {
      Eigen::VectorXcd d(dim);
      for (int idx = 0; idx < dim; ++idx) d(idx) = idx - spec.cutoff;
      return {LinkOperator::from_diagonal(d)};
    }
    case GroupKind::truncated_su2: {
      std::vector<LinkOperator> out;
      // Right generators act on the n index, left on the m index.
      for (int which = 0; which < 2; ++which) {
        for (int a = 0; a < 3; ++a) {
          Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
          for (int tj = 0; tj <= spec.twice_jmax; ++tj) {
            auto J = spin_matrices(tj);
            int d = tj + 1;
            for (int im = 0; im < d; ++im)
              for (int in = 0; in < d; ++in)
                for (int ip = 0; ip < d; ++ip) {
                  int base = block_offset(tj);
                  if (which == 0) {
                    // R_a = 1 (x) J_a on n
                    op(base + im * d + ip, base + im * d + in) +=
                        J[a](ip, in);
                  } else {
                    // L_a = J_a^T (x) 1 on m
                    op(base + ip * d + in, base + im * d + in) +=
                        J[a](im, ip);
                  }
                }
          }
          bool diag = (a == 2);
          out.emplace_back(op, diag);
        }
      }
      return out;  // order: R1 R2 R3 L1 L2 L3
    }
  }
  throw internal_error("unreachable group kind");
}

SpectralFn default_spectral_fn(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupKind::cyclic_zn: {
      int n = spec.n;
      return [n](const IrrepLabel& ir) {
        return 1.0 - std::cos(2 * pi * ir.j / n);
      };
    }
    case GroupKind::truncated_u1:
      return [](const IrrepLabel& ir) {
        return static_cast<double>(ir.j) * ir.j;
      };
    case GroupKind::truncated_su2:
      return [](const IrrepLabel& ir) {
        double j = ir.j / 2.0;
        return j * (j + 1.0);
      };
  }
  throw internal_error("unreachable group kind");
}

LinkOperator build_casimir(const GroupSpec& spec) {
  auto f = default_spectral_fn(spec);
  auto basis = rep_basis(spec);
  Eigen::VectorXcd d(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) d(i) = f(basis[i].irrep);
  return LinkOperator::from_diagonal(d);
}

std::vector<std::vector<LinkOperator>> build_U(const GroupSpec& spec) {
  return build_U(spec, fundamental_irrep(spec));
}

std::vector<std::vector<LinkOperator>> build_U(const GroupSpec& spec,
                                               const IrrepLabel& irrep) {
  int dim = spec.link_dim();
  switch (spec.kind) {
    case GroupKind::cyclic_zn: {
      int r = irrep.j;
      if (r < 0 || r >= spec.n || irrep.dim != 1)
        throw config_error("irrep outside truncation");
      Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
      for (int j = 0; j < dim; ++j) u((j + r) % spec.n, j) = 1.0;
      return {{LinkOperator(u, r == 0)}};
    }
    case GroupKind::truncated_u1: {
      int r = irrep.j;
      if (std::abs(r) > 2 * spec.cutoff || irrep.dim != 1)
        throw config_error("irrep outside truncation");
      Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
      for (int idx = 0; idx < dim; ++idx) {
        int j = idx - spec.cutoff;
        int jt = j + r;
        if (jt >= -spec.cutoff && jt <= spec.cutoff)
          u(jt + spec.cutoff, idx) = 1.0;
      }
      return {{LinkOperator(u, r == 0)}};
    }
    case GroupKind::truncated_su2: {
      if (irrep.j != 1 || irrep.dim != 2)
        throw config_error("irrep outside truncation");
      std::vector<std::vector<LinkOperator>> out(
          2, std::vector<LinkOperator>(
                 2, LinkOperator(Eigen::MatrixXcd::Zero(dim, dim), false)));
      for (int ia = 0; ia < 2; ++ia) {
        int ta = 1 - 2 * ia;  // doubled m of the operator, descending
        for (int ib = 0; ib < 2; ++ib) {
          int tb = 1 - 2 * ib;
          Eigen::MatrixXcd& u = out[ia][ib].mat;
          for (int tJ = 0; tJ <= spec.twice_jmax; ++tJ) {
            for (int tM = tJ; tM >= -tJ; tM -= 2) {
              for (int tN = tJ; tN >= -tJ; tN -= 2) {
                for (int tK = std::abs(tJ - 1); tK <= tJ + 1; tK += 2) {
                  if (tK > spec.twice_jmax) continue;
                  int tMp = tM + ta, tNp = tN + tb;
                  if (std::abs(tMp) > tK || std::abs(tNp) > tK) continue;
                  double amp =
                      std::sqrt(double(tJ + 1) / double(tK + 1)) *
                      clebsch_gordan(tJ, tM, 1, ta, tK, tMp) *
                      clebsch_gordan(tJ, tN, 1, tb, tK, tNp);
                  if (amp != 0.0)
                    u(su2_index(tK, tMp, tNp), su2_index(tJ, tM, tN)) += amp;
                }
              }
            }
          }
        }
      }
      return out;
    }
  }
  throw internal_error("unreachable group kind");
}

Eigen::MatrixXcd peter_weyl_transform(const GroupSpec& spec) {
  if (spec.kind != GroupKind::cyclic_zn)
    throw config_error(
        "group-element basis is not materialized for truncated continuous "
        "groups");
  int n = spec.n;
  Eigen::MatrixXcd w(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      w(k, j) = std::exp(cplx(0, -2 * pi * j * k / n)) / std::sqrt(double(n));
  return w;
}

Eigen::MatrixXcd wigner_D(int twice_j, const GroupElement& g) {
  if (twice_j < 0 || twice_j > 3) throw config_error("unsupported spin");
  if (g.kind != GroupKind::truncated_su2)
    throw config_error("group element incompatible with group spec");
  int d = twice_j + 1;
  Eigen::MatrixXcd small = wigner_d_small(twice_j, g.beta);
  Eigen::MatrixXcd out(d, d);
  for (int im = 0; im < d; ++im) {
    double mp = (twice_j - 2 * im) / 2.0;
    for (int in = 0; in < d; ++in) {
      double m = (twice_j - 2 * in) / 2.0;
      out(im, in) = std::exp(cplx(0, -g.alpha * mp)) * small(im, in) *
                    std::exp(cplx(0, -g.gamma * m));
    }
  }
  return out;
}

Eigen::MatrixXcd irrep_matrix(const GroupSpec& spec, const IrrepLabel& irrep,
                              const GroupElement& g) {
  check_element(spec, g);
  switch (spec.kind) {
    case GroupKind::cyclic_zn: {
      Eigen::MatrixXcd m(1, 1);
      m(0, 0) = std::exp(cplx(0, -2 * pi * irrep.j * g.k / spec.n));
      return m;
    }
    case GroupKind::truncated_u1: {
      Eigen::MatrixXcd m(1, 1);
      m(0, 0) = std::exp(cplx(0, irrep.j * g.phi));
      return m;
    }
    case GroupKind::truncated_su2:
      return wigner_D(irrep.j, g);
  }
  throw internal_error("unreachable group kind");
}

double clebsch_gordan(int twice_j1, int twice_m1, int twice_j2, int twice_m2,
                      int twice_J, int twice_M) {
  auto valid = [](int tj, int tm) {
    return tj >= 0 && std::abs(tm) <= tj && (tj - tm) % 2 == 0;
  };
  if (!valid(twice_j1, twice_m1) || !valid(twice_j2, twice_m2) ||
      !valid(twice_J, twice_M))
    throw config_error("malformed angular momentum labels");
  if (twice_M != twice_m1 + twice_m2) return 0.0;
  if (twice_J < std::abs(twice_j1 - twice_j2) || twice_J > twice_j1 + twice_j2)
    return 0.0;
  if ((twice_j1 + twice_j2 + twice_J) % 2 != 0) return 0.0;

  int j1pj2mJ = (twice_j1 + twice_j2 - twice_J) / 2;
  int j1mj2pJ = (twice_j1 - twice_j2 + twice_J) / 2;
  int mj1pj2pJ = (-twice_j1 + twice_j2 + twice_J) / 2;
  int j1pj2pJp1 = (twice_j1 + twice_j2 + twice_J) / 2 + 1;
  double pref =
      std::sqrt((twice_J + 1.0) * factorial(j1pj2mJ) * factorial(j1mj2pJ) *
                factorial(mj1pj2pJ) / factorial(j1pj2pJp1));

  int JpM = (twice_J + twice_M) / 2, JmM = (twice_J - twice_M) / 2;
  int j1pm1 = (twice_j1 + twice_m1) / 2, j1mm1 = (twice_j1 - twice_m1) / 2;
  int j2pm2 = (twice_j2 + twice_m2) / 2, j2mm2 = (twice_j2 - twice_m2) / 2;
  pref *= std::sqrt(factorial(JpM) * factorial(JmM) * factorial(j1mm1) *
                    factorial(j1pm1) * factorial(j2mm2) * factorial(j2pm2));

  int Jmj2pm1 = (twice_J - twice_j2 + twice_m1) / 2;
  int Jmj1mm2 = (twice_J - twice_j1 - twice_m2) / 2;
  double sum = 0.0;
  int kmin = std::max(0, std::max(-Jmj2pm1, -Jmj1mm2));
  int kmax = std::min(j1pj2mJ, std::min(j1mm1, j2pm2));
  for (int k = kmin; k <= kmax; ++k) {
    double denom = factorial(k) * factorial(j1pj2mJ - k) *
                   factorial(j1mm1 - k) * factorial(j2pm2 - k) *
                   factorial(Jmj2pm1 + k) * factorial(Jmj1mm2 + k);
    sum += (k % 2 == 0 ? 1.0 : -1.0) / denom;
  }
  return pref * sum;
}

std::array<Eigen::MatrixXcd, 3> spin_matrices(int twice_j) {
  if (twice_j < 0 || twice_j > 3) throw config_error("unsupported spin");
  int d = twice_j + 1;
  Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(d, d);
  double j = twice_j / 2.0;
  for (int i = 0; i < d; ++i) {
    double m = j - i;
    jz(i, i) = m;
    if (i > 0) jp(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  Eigen::MatrixXcd jm = jp.adjoint();
  Eigen::MatrixXcd jx = 0.5 * (jp + jm);
  Eigen::MatrixXcd jy = cplx(0, -0.5) * (jp - jm);
  return {jx, jy, jz};
}

}  // namespace lgt
