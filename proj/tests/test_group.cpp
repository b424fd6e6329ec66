#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "lgt/group.hpp"
#include "oracles.hpp"

using namespace lgt;
using oracle::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

Eigen::MatrixXcd mat(const LinkOperator& op) { return op.mat; }

double comm_norm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a * b - b * a).cwiseAbs().maxCoeff();
}

std::vector<GroupElement> sample_elements(const GroupSpec& spec, int count) {
  std::vector<GroupElement> out;
  if (spec.kind == GroupKind::cyclic_zn) {
    for (int k = 0; k < spec.n; ++k) out.push_back(GroupElement::zn(k));
    return out;
  }
  std::mt19937_64 rng(12345);
  for (int i = 0; i < count; ++i) out.push_back(random_element(spec, rng));
  return out;
}

}  // namespace

TEST_CASE("link dimensions and irrep content") {
  CHECK(GroupSpec::cyclic(2).link_dim() == 2);
  CHECK(GroupSpec::cyclic(5).link_dim() == 5);
  CHECK(GroupSpec::u1(1).link_dim() == 3);
  CHECK(GroupSpec::u1(3).link_dim() == 7);
  CHECK(GroupSpec::su2(1).link_dim() == 5);
  CHECK(GroupSpec::su2(2).link_dim() == 14);
  CHECK(GroupSpec::su2(3).link_dim() == 30);

  const auto zn = irreps(GroupSpec::cyclic(3));
  REQUIRE(zn.size() == 3);
  for (int j = 0; j < 3; ++j) {
    CHECK(zn[j].j == j);
    CHECK(zn[j].dim == 1);
  }

  const auto u1 = irreps(GroupSpec::u1(2));
  REQUIRE(u1.size() == 5);
  CHECK(u1.front().j == -2);
  CHECK(u1.back().j == 2);

  const auto su2 = irreps(GroupSpec::su2(3));
  REQUIRE(su2.size() == 4);
  int total = 0;
  for (const auto& irrep : su2) total += irrep.dim * irrep.dim;
  CHECK(total == 30);

  CHECK(fundamental_irrep(GroupSpec::cyclic(4)).j == 1);
  CHECK(fundamental_irrep(GroupSpec::u1(1)).j == 1);
  CHECK(fundamental_irrep(GroupSpec::su2(1)).j == 1);  // doubled spin 1/2
}

TEST_CASE("su2 rep basis ordering: ascending j, m slow descending, n fast") {
  const auto basis = rep_basis(GroupSpec::su2(1));
  REQUIRE(basis.size() == 5);
  CHECK(basis[0].irrep.j == 0);
  const int tm[4] = {1, 1, -1, -1};
  const int tn[4] = {1, -1, 1, -1};
  for (int i = 0; i < 4; ++i) {
    CHECK(basis[1 + i].irrep.j == 1);
    CHECK(basis[1 + i].twice_m == tm[i]);
    CHECK(basis[1 + i].twice_n == tn[i]);
  }
}

TEST_CASE("group spec validation") {
  CHECK_THROWS_AS(GroupSpec::cyclic(1), config_error);
  CHECK_THROWS_AS(GroupSpec::u1(0), config_error);
  CHECK_THROWS_AS(GroupSpec::su2(0), config_error);
  CHECK_THROWS_AS(GroupSpec::su2(4), config_error);
}

TEST_CASE("group element algebra") {
  SUBCASE("cyclic") {
    const GroupSpec spec = GroupSpec::cyclic(5);
    const GroupElement a = GroupElement::zn(2), b = GroupElement::zn(4);
    CHECK(compose(spec, a, b).k == 1);
    CHECK(inverse(spec, a).k == 3);
    CHECK(identity_element(spec).k == 0);
    CHECK_THROWS_AS(compose(spec, GroupElement::zn(5), b), config_error);
  }
  SUBCASE("u1 angles compose mod 2pi") {
    const GroupSpec spec = GroupSpec::u1(1);
    const GroupElement a = GroupElement::u1(4.0), b = GroupElement::u1(3.0);
    CHECK(compose(spec, a, b).phi == doctest::Approx(7.0 - 2 * kPi));
    CHECK(inverse(spec, a).phi == doctest::Approx(2 * kPi - 4.0));
    CHECK(identity_element(spec).phi == 0.0);
  }
  SUBCASE("su2 composition matches the fundamental representation") {
    const GroupSpec spec = GroupSpec::su2(1);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const GroupElement a = random_element(spec, rng);
      const GroupElement b = random_element(spec, rng);
      const Eigen::MatrixXcd da = wigner_D(1, a);
      const Eigen::MatrixXcd db = wigner_D(1, b);
      const Eigen::MatrixXcd dc = wigner_D(1, compose(spec, a, b));
      CHECK(max_abs_diff(da * db, dc) < 1e-12);
      const Eigen::MatrixXcd dinv = wigner_D(1, inverse(spec, a));
      CHECK(max_abs_diff(dinv, da.adjoint()) < 1e-12);
    }
    const Eigen::MatrixXcd did = wigner_D(1, identity_element(spec));
    CHECK(max_abs_diff(did, Eigen::MatrixXcd::Identity(2, 2)) < 1e-15);
  }
  SUBCASE("invalid euler ranges rejected") {
    const GroupSpec spec = GroupSpec::su2(1);
    CHECK_THROWS_AS(build_theta(spec, GroupElement::su2(0.0, 4.0, 0.0),
                                Side::right),
                    config_error);
    CHECK_THROWS_AS(build_theta(spec, GroupElement::su2(-1.0, 1.0, 0.0),
                                Side::right),
                    config_error);
  }
}

TEST_CASE("link operator arithmetic and structure tags") {
  Eigen::MatrixXcd d(2, 2), x(2, 2);
  d << 1, 0, 0, -2;
  x << 0, 1, 1, 0;
  const LinkOperator a(d, true), b(x, false);
  CHECK((a + a).diagonal);
  CHECK((a * a).diagonal);
  CHECK((a * cplx{2, 1}).diagonal);
  CHECK(a.adjoint().diagonal);
  CHECK_FALSE((a + b).diagonal);
  CHECK_FALSE((a * b).diagonal);
  CHECK(max_abs_diff(mat(a * b), d * x) < 1e-15);
  CHECK(max_abs_diff(mat(b.adjoint()), x.adjoint()) < 1e-15);
  CHECK(max_abs_diff(mat(LinkOperator::identity(3)),
                     Eigen::MatrixXcd::Identity(3, 3)) < 1e-15);
}

TEST_CASE("translation operators: frozen values") {
  SUBCASE("z2 identity element is the identity operator") {
    const GroupSpec spec = GroupSpec::cyclic(2);
    for (Side side : {Side::left, Side::right}) {
      const auto th = build_theta(spec, GroupElement::zn(0), side);
      CHECK(th.diagonal);
      CHECK(max_abs_diff(mat(th), Eigen::MatrixXcd::Identity(2, 2)) < 1e-15);
    }
  }
  SUBCASE("z3 generator: diagonal of irrep phases") {
    const GroupSpec spec = GroupSpec::cyclic(3);
    const auto th = build_theta(spec, GroupElement::zn(1), Side::right);
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(3, 3);
    expect(0, 0) = 1.0;
    expect(1, 1) = std::exp(-2.0 * kPi * kI / 3.0);
    expect(2, 2) = std::exp(-4.0 * kPi * kI / 3.0);
    CHECK(max_abs_diff(mat(th), expect) < 1e-14);
    CHECK(max_abs_diff(mat(th), oracle::zn_translation_rep(3, 1)) < 1e-13);
  }
  SUBCASE("abelian left and right coincide") {
    for (const GroupSpec& spec : {GroupSpec::cyclic(4), GroupSpec::u1(2)}) {
      for (const GroupElement& g : sample_elements(spec, 5))
        CHECK(max_abs_diff(mat(build_theta(spec, g, Side::left)),
                           mat(build_theta(spec, g, Side::right))) < 1e-15);
    }
  }
  SUBCASE("u1 phases against the generator exponential") {
    const GroupSpec spec = GroupSpec::u1(2);
    const Eigen::MatrixXcd e = mat(build_electric(spec)[0]);
    for (const GroupElement& g : sample_elements(spec, 10)) {
      const auto th = build_theta(spec, g, Side::right);
      CHECK(max_abs_diff(mat(th), oracle::herm_exp(e, -g.phi)) < 1e-13);
    }
  }
  SUBCASE("su2 y-rotation by pi: block structure") {
    const GroupSpec spec = GroupSpec::su2(1);
    const GroupElement g = GroupElement::su2(0.0, kPi, 0.0);
    const auto th = build_theta(spec, g, Side::right);
    REQUIRE(th.mat.rows() == 5);
    CHECK(std::abs(th.mat(0, 0) - cplx{1, 0}) < 1e-14);
    // Right translation acts on n within each m row: 1_m (x) D^{1/2}.
    Eigen::MatrixXcd dhalf(2, 2);
    dhalf << 0, -1, 1, 0;
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(5, 5);
    expect(0, 0) = 1.0;
    expect.block(1, 1, 2, 2) = dhalf;
    expect.block(3, 3, 2, 2) = dhalf;
    CHECK(max_abs_diff(mat(th), expect) < 1e-14);
  }
  SUBCASE("su2 against the exponential oracle, both sides") {
    for (int tjmax : {1, 2}) {
      const GroupSpec spec = GroupSpec::su2(tjmax);
      for (const GroupElement& g : sample_elements(spec, 8)) {
        for (Side side : {Side::left, Side::right}) {
          const auto th = build_theta(spec, g, side);
          CHECK(max_abs_diff(mat(th), oracle::su2_theta_exp(spec, g, side)) <
                1e-12);
        }
      }
    }
  }
  SUBCASE("unitary for every variant and sampled element") {
    for (const GroupSpec& spec : {GroupSpec::cyclic(3), GroupSpec::u1(2),
                                  GroupSpec::su2(2)}) {
      const Eigen::MatrixXcd id =
          Eigen::MatrixXcd::Identity(spec.link_dim(), spec.link_dim());
      for (const GroupElement& g : sample_elements(spec, 10)) {
        for (Side side : {Side::left, Side::right}) {
          const Eigen::MatrixXcd th = mat(build_theta(spec, g, side));
          CHECK(max_abs_diff(th.adjoint() * th, id) < 1e-13);
        }
      }
    }
  }
  SUBCASE("homomorphism property") {
    for (const GroupSpec& spec : {GroupSpec::cyclic(4), GroupSpec::u1(1),
                                  GroupSpec::su2(1)}) {
      auto elems = sample_elements(spec, 4);
      for (const GroupElement& a : elems)
        for (const GroupElement& b : elems) {
          for (Side side : {Side::left, Side::right}) {
            // |h> -> |h g^{-1}> composes forward; |h> -> |g^{-1} h>
            // reverses the order.
            const Eigen::MatrixXcd ta = mat(build_theta(spec, a, side));
            const Eigen::MatrixXcd tb = mat(build_theta(spec, b, side));
            const GroupElement ab = side == Side::right
                                        ? compose(spec, a, b)
                                        : compose(spec, b, a);
            const Eigen::MatrixXcd tab = mat(build_theta(spec, ab, side));
            CHECK(max_abs_diff(ta * tb, tab) < 1e-12);
          }
        }
    }
  }
}

TEST_CASE("electric generators") {
  SUBCASE("u1 cutoff 1: diag(-1, 0, 1)") {
    const auto ops = build_electric(GroupSpec::u1(1));
    REQUIRE(ops.size() == 1);
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(3, 3);
    expect(0, 0) = -1;
    expect(2, 2) = 1;
    CHECK(ops[0].diagonal);
    CHECK(max_abs_diff(mat(ops[0]), expect) < 1e-15);
  }
  SUBCASE("zn counts the irrep label") {
    const auto ops = build_electric(GroupSpec::cyclic(4));
    REQUIRE(ops.size() == 1);
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(ops[0].mat(j, j) - cplx(j, 0)) < 1e-15);
  }
  SUBCASE("su2: six generators with the stated eigenvalues") {
    const auto ops = build_electric(GroupSpec::su2(1));
    REQUIRE(ops.size() == 6);
    const Eigen::MatrixXcd r3 = mat(ops[2]);
    const Eigen::MatrixXcd l3 = mat(ops[5]);
    // R3 counts n, L3 counts m; eigenvalue multiset {0, +-1/2, +-1/2}.
    std::multiset<double> r3diag, expect{-0.5, -0.5, 0.0, 0.5, 0.5};
    for (int i = 0; i < 5; ++i)
      r3diag.insert(std::round(std::real(r3(i, i)) * 2) / 2);
    CHECK(r3diag == expect);
    const auto basis = rep_basis(GroupSpec::su2(1));
    for (int i = 0; i < 5; ++i) {
      CHECK(std::abs(r3(i, i) - cplx(0.5 * basis[i].twice_n, 0)) < 1e-15);
      CHECK(std::abs(l3(i, i) - cplx(0.5 * basis[i].twice_m, 0)) < 1e-15);
    }
  }
  SUBCASE("su2 algebra closure") {
    for (int tjmax : {1, 2, 3}) {
      const auto ops = build_electric(GroupSpec::su2(tjmax));
      const Eigen::MatrixXcd r[3] = {mat(ops[0]), mat(ops[1]), mat(ops[2])};
      const Eigen::MatrixXcd l[3] = {mat(ops[3]), mat(ops[4]), mat(ops[5])};
      for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3, c = (a + 2) % 3;
        CHECK(max_abs_diff(r[a] * r[b] - r[b] * r[a], kI * r[c]) < 1e-13);
        CHECK(max_abs_diff(l[a] * l[b] - l[b] * l[a], -kI * l[c]) < 1e-13);
        for (int bb = 0; bb < 3; ++bb)
          CHECK(comm_norm(r[a], l[bb]) < 1e-14);
      }
      // Left and right Casimirs coincide with the spectral weights.
      Eigen::MatrixXcd rsq = Eigen::MatrixXcd::Zero(r[0].rows(), r[0].cols());
      Eigen::MatrixXcd lsq = rsq;
      for (int a = 0; a < 3; ++a) {
        rsq += r[a] * r[a];
        lsq += l[a] * l[a];
      }
      const Eigen::MatrixXcd cas = mat(build_casimir(GroupSpec::su2(tjmax)));
      CHECK(max_abs_diff(rsq, cas) < 1e-13);
      CHECK(max_abs_diff(lsq, cas) < 1e-13);
    }
  }
  SUBCASE("hermitian") {
    for (const GroupSpec& spec : {GroupSpec::cyclic(3), GroupSpec::u1(2),
                                  GroupSpec::su2(3)}) {
      for (const auto& op : build_electric(spec))
        CHECK(max_abs_diff(op.mat, op.mat.adjoint()) < 1e-14);
    }
  }
}

TEST_CASE("spectral weights") {
  SUBCASE("z2 clock weight: diag(0, 2)") {
    const Eigen::MatrixXcd cas = mat(build_casimir(GroupSpec::cyclic(2)));
    CHECK(std::abs(cas(0, 0)) < 1e-15);
    CHECK(std::abs(cas(1, 1) - cplx{2, 0}) < 1e-14);
  }
  SUBCASE("u1 cutoff 1: diag(1, 0, 1)") {
    const Eigen::MatrixXcd cas = mat(build_casimir(GroupSpec::u1(1)));
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(3, 3);
    expect(0, 0) = 1;
    expect(2, 2) = 1;
    CHECK(max_abs_diff(cas, expect) < 1e-15);
  }
  SUBCASE("su2 jmax 1/2: diag(0, 3/4 x4)") {
    const Eigen::MatrixXcd cas = mat(build_casimir(GroupSpec::su2(1)));
    CHECK(std::abs(cas(0, 0)) < 1e-15);
    for (int i = 1; i < 5; ++i)
      CHECK(std::abs(cas(i, i) - cplx{0.75, 0}) < 1e-14);
  }
  SUBCASE("default spectral function matches the casimir diagonal") {
    for (const GroupSpec& spec : {GroupSpec::cyclic(5), GroupSpec::u1(3),
                                  GroupSpec::su2(3)}) {
      const auto f = default_spectral_fn(spec);
      const auto basis = rep_basis(spec);
      const Eigen::MatrixXcd cas = mat(build_casimir(spec));
      for (std::size_t i = 0; i < basis.size(); ++i)
        CHECK(std::abs(cas(i, i) - cplx(f(basis[i].irrep), 0)) < 1e-13);
    }
  }
}

TEST_CASE("parallel transporters") {
  SUBCASE("z2: sigma_x, squares to one") {
    const auto u = build_U(GroupSpec::cyclic(2));
    REQUIRE(u.size() == 1);
    Eigen::MatrixXcd sx(2, 2);
    sx << 0, 1, 1, 0;
    CHECK(max_abs_diff(mat(u[0][0]), sx) < 1e-15);
    CHECK(max_abs_diff(mat(u[0][0] * u[0][0]),
                       Eigen::MatrixXcd::Identity(2, 2)) < 1e-15);
    CHECK(max_abs_diff(mat(u[0][0]), oracle::zn_multiplication_rep(2, 1)) <
          1e-13);
  }
  SUBCASE("zn irrep transporters against the fourier oracle") {
    const GroupSpec spec = GroupSpec::cyclic(4);
    for (int r = 0; r < 4; ++r) {
      const auto u = build_U(spec, IrrepLabel{r, 1});
      CHECK(max_abs_diff(mat(u[0][0]), oracle::zn_multiplication_rep(4, r)) <
            1e-13);
      const Eigen::MatrixXcd m = mat(u[0][0]);
      CHECK(max_abs_diff(m.adjoint() * m, Eigen::MatrixXcd::Identity(4, 4)) <
            1e-14);
    }
  }
  SUBCASE("u1: raising with edge annihilation") {
    const auto u = build_U(GroupSpec::u1(1));
    const Eigen::MatrixXcd m = mat(u[0][0]);
    // Basis ascending j = -1, 0, 1: U|j> = |j+1>, U|1> = 0.
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(3, 3);
    expect(1, 0) = 1;
    expect(2, 1) = 1;
    CHECK(max_abs_diff(m, expect) < 1e-15);
    Eigen::MatrixXcd udu = Eigen::MatrixXcd::Zero(3, 3);
    udu(0, 0) = 1;
    udu(1, 1) = 1;
    CHECK(max_abs_diff(m.adjoint() * m, udu) < 1e-15);
    Eigen::MatrixXcd uud = Eigen::MatrixXcd::Zero(3, 3);
    uud(1, 1) = 1;
    uud(2, 2) = 1;
    CHECK(max_abs_diff(m * m.adjoint(), uud) < 1e-15);
  }
  SUBCASE("su2: vacuum column and haar-quadrature cross-check") {
    for (int tjmax : {1, 2}) {
      const GroupSpec spec = GroupSpec::su2(tjmax);
      const auto u = build_U(spec);
      REQUIRE(u.size() == 2);
      REQUIRE(u[0].size() == 2);
      const auto basis = rep_basis(spec);
      // U_{mn}|000> = (1/sqrt 2)|1/2 m n>.
      for (int im = 0; im < 2; ++im)
        for (int in = 0; in < 2; ++in) {
          const Eigen::VectorXcd col = u[im][in].mat.col(0);
          for (std::size_t r = 0; r < basis.size(); ++r) {
            const bool hit = basis[r].irrep.j == 1 &&
                             basis[r].twice_m == 1 - 2 * im &&
                             basis[r].twice_n == 1 - 2 * in;
            const cplx expect = hit ? cplx{1.0 / std::sqrt(2.0), 0} : cplx{0, 0};
            CHECK(std::abs(col(r) - expect) < 1e-14);
          }
        }
      const auto haar = oracle::haar_fundamental(spec);
      for (int im = 0; im < 2; ++im)
        for (int in = 0; in < 2; ++in)
          CHECK(max_abs_diff(u[im][in].mat, haar[im][in]) < 5e-9);
    }
  }
  SUBCASE("su2 rejects non-fundamental irreps") {
    CHECK_THROWS_AS(build_U(GroupSpec::su2(2), IrrepLabel{2, 3}),
                    config_error);
  }
  SUBCASE("irreps outside the truncation are rejected") {
    CHECK_THROWS_AS(build_U(GroupSpec::cyclic(3), IrrepLabel{3, 1}),
                    config_error);
    // Charge 2 still has one surviving element on a cutoff-1 link
    // (j = -1 -> +1); charge 3 has none and is rejected.
    const auto u2 = build_U(GroupSpec::u1(1), IrrepLabel{2, 1});
    CHECK(std::abs(u2[0][0].mat(2, 0) - cplx{1, 0}) < 1e-15);
    CHECK(u2[0][0].mat.cwiseAbs().sum() == doctest::Approx(1.0));
    CHECK_THROWS_AS(build_U(GroupSpec::u1(1), IrrepLabel{3, 1}),
                    config_error);
  }
  SUBCASE("ladder identity [E, U] = U away from the boundary") {
    SUBCASE("u1: exact everywhere, both sides annihilate the top") {
      const GroupSpec spec = GroupSpec::u1(2);
      const Eigen::MatrixXcd e = mat(build_electric(spec)[0]);
      const Eigen::MatrixXcd m = mat(build_U(spec)[0][0]);
      CHECK(max_abs_diff(e * m - m * e, m) < 1e-14);
    }
    SUBCASE("zn: holds except the wrap entry") {
      const GroupSpec spec = GroupSpec::cyclic(5);
      const Eigen::MatrixXcd e = mat(build_electric(spec)[0]);
      const Eigen::MatrixXcd m = mat(build_U(spec)[0][0]);
      Eigen::MatrixXcd delta = e * m - m * e - m;
      delta(0, 4) = 0.0;  // wrap |4> -> |0> steps the label down by 5
      CHECK(delta.cwiseAbs().maxCoeff() < 1e-13);
    }
  }
  SUBCASE("unitarity dichotomy") {
    for (int n : {2, 3, 5}) {
      const Eigen::MatrixXcd m = mat(build_U(GroupSpec::cyclic(n))[0][0]);
      CHECK(max_abs_diff(m.adjoint() * m,
                         Eigen::MatrixXcd::Identity(n, n)) < 1e-13);
    }
    for (const GroupSpec& spec : {GroupSpec::u1(1), GroupSpec::u1(3)}) {
      const Eigen::MatrixXcd m = mat(build_U(spec)[0][0]);
      const int d = spec.link_dim();
      CHECK(max_abs_diff(m.adjoint() * m,
                         Eigen::MatrixXcd::Identity(d, d)) > 1e-6);
    }
    {
      const GroupSpec spec = GroupSpec::su2(1);
      const auto u = build_U(spec);
      const int d = spec.link_dim();
      Eigen::MatrixXcd udu = Eigen::MatrixXcd::Zero(d, d);
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n)
          udu += u[m][n].mat.adjoint() * u[m][n].mat;
      // Sum over the fundamental indices of U^dag U would be 2x identity
      // for an exactly unitary transporter.
      CHECK(max_abs_diff(udu, 2.0 * Eigen::MatrixXcd::Identity(d, d)) > 1e-6);
    }
  }
  SUBCASE("transformation law, both sides") {
    for (const GroupSpec& spec : {GroupSpec::cyclic(3), GroupSpec::u1(2),
                                  GroupSpec::su2(1), GroupSpec::su2(2)}) {
      const auto u = build_U(spec);
      const IrrepLabel fund = fundamental_irrep(spec);
      const int fd = fund.dim;
      for (const GroupElement& g : sample_elements(spec, 20)) {
        const Eigen::MatrixXcd thr = mat(build_theta(spec, g, Side::right));
        const Eigen::MatrixXcd thl = mat(build_theta(spec, g, Side::left));
        const Eigen::MatrixXcd d = irrep_matrix(spec, fund, g);
        for (int m = 0; m < fd; ++m)
          for (int n = 0; n < fd; ++n) {
            Eigen::MatrixXcd rhs_r =
                Eigen::MatrixXcd::Zero(thr.rows(), thr.cols());
            for (int np = 0; np < fd; ++np) rhs_r += u[m][np].mat * d(np, n);
            CHECK(max_abs_diff(thr * u[m][n].mat * thr.adjoint(), rhs_r) <
                  1e-12);
            Eigen::MatrixXcd rhs_l =
                Eigen::MatrixXcd::Zero(thl.rows(), thl.cols());
            for (int mp = 0; mp < fd; ++mp) rhs_l += d(m, mp) * u[mp][n].mat;
            CHECK(max_abs_diff(thl * u[m][n].mat * thl.adjoint(), rhs_l) <
                  1e-12);
          }
      }
    }
  }
}

TEST_CASE("peter-weyl transform") {
  SUBCASE("z2: the 2-point fourier matrix") {
    const Eigen::MatrixXcd w = peter_weyl_transform(GroupSpec::cyclic(2));
    Eigen::MatrixXcd expect(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    expect << s, s, s, -s;
    CHECK(max_abs_diff(w, expect) < 1e-15);
  }
  SUBCASE("z3 unitary") {
    const Eigen::MatrixXcd w = peter_weyl_transform(GroupSpec::cyclic(3));
    CHECK(max_abs_diff(w.adjoint() * w, Eigen::MatrixXcd::Identity(3, 3)) <
          1e-14);
  }
  SUBCASE("z4: conjugated group shift is diagonal with 4th roots of unity") {
    const Eigen::MatrixXcd w = peter_weyl_transform(GroupSpec::cyclic(4));
    Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(4, 4);
    for (int m = 0; m < 4; ++m) shift(((m - 1) % 4 + 4) % 4, m) = 1.0;
    const Eigen::MatrixXcd diag = w.adjoint() * shift * w;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        if (r != c) {
          CHECK(std::abs(diag(r, c)) < 1e-14);
        } else {
          CHECK(std::abs(std::abs(diag(r, c)) - 1.0) < 1e-14);
          CHECK(std::abs(std::pow(diag(r, c), 4) - cplx{1, 0}) < 1e-13);
        }
      }
  }
  SUBCASE("continuous groups have no finite element basis") {
    CHECK_THROWS_AS(peter_weyl_transform(GroupSpec::u1(1)), config_error);
    CHECK_THROWS_AS(peter_weyl_transform(GroupSpec::su2(1)), config_error);
  }
}

TEST_CASE("wigner d-matrices") {
  SUBCASE("identity element") {
    for (int tj : {0, 1, 2, 3}) {
      const Eigen::MatrixXcd d = wigner_D(tj, GroupElement::su2(0, 0, 0));
      CHECK(max_abs_diff(d, Eigen::MatrixXcd::Identity(tj + 1, tj + 1)) <
            1e-15);
    }
  }
  SUBCASE("pure y-rotation of spin 1/2 is the real rotation matrix") {
    for (double beta : {0.3, 1.0, 2.2, kPi}) {
      const Eigen::MatrixXcd d =
          wigner_D(1, GroupElement::su2(0.0, beta, 0.0));
      Eigen::MatrixXcd expect(2, 2);
      expect << std::cos(beta / 2), -std::sin(beta / 2), std::sin(beta / 2),
          std::cos(beta / 2);
      CHECK(max_abs_diff(d, expect) < 1e-14);
    }
  }
  SUBCASE("spin-1 matrices unitary for 100 random elements") {
    const GroupSpec spec = GroupSpec::su2(1);
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
      const Eigen::MatrixXcd d = wigner_D(2, random_element(spec, rng));
      CHECK(max_abs_diff(d.adjoint() * d, Eigen::MatrixXcd::Identity(3, 3)) <
            1e-14);
    }
  }
  SUBCASE("matches the exponential oracle") {
    const GroupSpec spec = GroupSpec::su2(1);
    std::mt19937_64 rng(123);
    for (int i = 0; i < 25; ++i) {
      const GroupElement g = random_element(spec, rng);
      for (int tj : {1, 2, 3})
        CHECK(max_abs_diff(wigner_D(tj, g),
                           oracle::wigner_exp(tj, g.alpha, g.beta, g.gamma)) <
              1e-13);
    }
  }
  SUBCASE("out-of-range spin rejected") {
    CHECK_THROWS_AS(wigner_D(4, GroupElement::su2(0, 0, 0)), config_error);
  }
}

TEST_CASE("clebsch-gordan coefficients") {
  SUBCASE("frozen spin-1/2 couplings") {
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(clebsch_gordan(1, 1, 1, 1, 2, 2) == doctest::Approx(1.0));
    CHECK(clebsch_gordan(1, 1, 1, -1, 2, 0) == doctest::Approx(s));
    CHECK(clebsch_gordan(1, -1, 1, 1, 2, 0) == doctest::Approx(s));
    CHECK(clebsch_gordan(1, 1, 1, -1, 0, 0) == doctest::Approx(s));
    CHECK(clebsch_gordan(1, -1, 1, 1, 0, 0) == doctest::Approx(-s));
  }
  SUBCASE("selection rules") {
    CHECK(clebsch_gordan(1, 1, 1, 1, 2, 0) == 0.0);   // M != m1 + m2
    CHECK(clebsch_gordan(1, 1, 2, 0, 5, 1) == 0.0);   // triangle violated
    // |M| > J is not a quantum number pair at all; rejected, not zero.
    CHECK_THROWS_AS(clebsch_gordan(1, 1, 1, 1, 0, 2), config_error);
    CHECK_THROWS_AS(clebsch_gordan(1, 2, 1, 0, 2, 2), config_error);
  }
  SUBCASE("matches the ladder-construction oracle") {
    for (int tj1 : {1, 2, 3})
      for (int tj2 : {1, 2, 3})
        for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
          for (int tM = -tJ; tM <= tJ; tM += 2)
            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
              const int tm2 = tM - tm1;
              if (std::abs(tm2) > tj2) continue;
              CHECK(clebsch_gordan(tj1, tm1, tj2, tm2, tJ, tM) ==
                    doctest::Approx(
                        oracle::cg_ladder(tj1, tm1, tj2, tm2, tJ, tM))
                        .epsilon(1e-12));
            }
  }
  SUBCASE("orthogonality in the coupled label") {
    const int tj1 = 2, tj2 = 1;
    for (int tJ = 1; tJ <= 3; tJ += 2)
      for (int tJp = 1; tJp <= 3; tJp += 2)
        for (int tM = -1; tM <= 1; tM += 2) {
          double sum = 0.0;
          for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
            const int tm2 = tM - tm1;
            if (std::abs(tm2) > tj2) continue;
            sum += clebsch_gordan(tj1, tm1, tj2, tm2, tJ, tM) *
                   clebsch_gordan(tj1, tm1, tj2, tm2, tJp, tM);
          }
          CHECK(std::abs(sum - (tJ == tJp ? 1.0 : 0.0)) < 1e-13);
        }
  }
}

TEST_CASE("spin matrices") {
  for (int tj : {1, 2, 3}) {
    const auto j = spin_matrices(tj);
    const auto ladder = oracle::ladder_spin(tj);
    for (int a = 0; a < 3; ++a)
      CHECK(max_abs_diff(j[a], ladder[a]) < 1e-14);
    CHECK(max_abs_diff(j[0] * j[1] - j[1] * j[0], kI * j[2]) < 1e-14);
  }
}

TEST_CASE("random elements are valid and spread out") {
  std::mt19937_64 rng(5);
  const GroupSpec zn = GroupSpec::cyclic(6);
  std::set<int> seen;
  for (int i = 0; i < 200; ++i) seen.insert(random_element(zn, rng).k);
  CHECK(seen.size() == 6);
  const GroupSpec su2 = GroupSpec::su2(1);
  for (int i = 0; i < 50; ++i) {
    const GroupElement g = random_element(su2, rng);
    CHECK(g.alpha >= 0.0);
    CHECK(g.alpha < 2 * kPi);
    CHECK(g.beta >= 0.0);
    CHECK(g.beta <= kPi);
    CHECK(g.gamma >= 0.0);
    CHECK(g.gamma < 4 * kPi);
    // Validity under the element check inside build_theta.
    CHECK_NOTHROW(build_theta(su2, g, Side::right));
  }
}
