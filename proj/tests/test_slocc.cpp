#include <cmath>
#include <random>

#include <doctest.h>

#include "entsec/slocc.hpp"

using namespace entsec;

namespace {

PureState from_amps(std::initializer_list<cxd> a) {
    Eigen::VectorXcd amps(static_cast<long>(a.size()));
    int i = 0;
    for (cxd x : a) amps(i++) = x;
    return PureState({2, 2, 2}, amps).normalized();
}

// the six canonical class representatives
PureState rep(SloccClass c) {
    switch (c) {
        case SloccClass::ProductABC: return from_amps({1, 0, 0, 0, 0, 0, 0, 0});
        case SloccClass::BiSep_A_BC: return from_amps({1, 0, 0, 1, 0, 0, 0, 0});
        case SloccClass::BiSep_B_CA: return from_amps({1, 0, 0, 0, 0, 1, 0, 0});
        case SloccClass::BiSep_C_AB: return from_amps({1, 0, 0, 0, 0, 0, 1, 0});
        case SloccClass::W: return from_amps({0, 1, 1, 0, 1, 0, 0, 0});
        case SloccClass::GHZ: return from_amps({1, 0, 0, 0, 0, 0, 0, 1});
    }
    throw input_error("unknown class");
}

const SloccClass kAll[] = {SloccClass::ProductABC, SloccClass::BiSep_A_BC,
                           SloccClass::BiSep_B_CA, SloccClass::BiSep_C_AB,
                           SloccClass::W,          SloccClass::GHZ};

// smallest singular value of a 4-vector reshaped as a 2x2 (B row, C column)
double min_sv(const Eigen::Vector4cd& v) {
    Eigen::Matrix2cd m;
    m << v(0), v(1), v(2), v(3);
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
    return svd.singularValues()(1);
}

} // namespace

TEST_CASE("schmidt rank of standard states") {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
    amps(0) = 1.0;
    CHECK(schmidt_rank(PureState({2, 2}, amps), {0}, {1}) == 1);
    CHECK(schmidt_rank(make_bell(), {0}, {1}) == 2);
    CHECK(schmidt_rank(make_ghz(), {0}, {1, 2}) == 2);
}

TEST_CASE("simple vector count distinguishes the pencil types") {
    Eigen::Vector4cd e00(1, 0, 0, 0), e11(0, 0, 0, 1);
    CHECK(simple_vector_count(e00, e11).kind == SimpleVectorKind::TwoDistinct);

    Eigen::Vector4cd sym(0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0);
    CHECK(simple_vector_count(e00, sym).kind == SimpleVectorKind::DoubleRoot);

    double d = 1.0 / std::sqrt(2.0);
    Eigen::Vector4cd v1(d, 1, 1, d), v2(1, d, d, 2);
    SimpleVectorCount sc = simple_vector_count(v1, v2);
    CHECK(sc.kind == SimpleVectorKind::TwoDistinct);

    // linearly dependent inputs are rejected
    CHECK_THROWS_AS(simple_vector_count(e00, 2.0 * e00), input_error);
}

TEST_CASE("quadratic coefficients match a direct determinant expansion") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        Eigen::Vector4cd v1, v2;
        for (int i = 0; i < 4; ++i) {
            v1(i) = cxd(g(rng), g(rng));
            v2(i) = cxd(g(rng), g(rng));
        }
        SimpleVectorCount sc = simple_vector_count(v1, v2);
        // oracle: evaluate det(x v1 + y v2) at probe points and compare
        auto det_at = [&](cxd x, cxd y) {
            Eigen::Vector4cd v = x * v1 + y * v2;
            return v(0) * v(3) - v(1) * v(2);
        };
        CHECK(std::abs(det_at(1, 0) - sc.a) < 1e-10);
        CHECK(std::abs(det_at(0, 1) - sc.c) < 1e-10);
        CHECK(std::abs(det_at(1, 1) - (sc.a + sc.b + sc.c)) < 1e-10);
        CHECK(std::abs(sc.discriminant - (sc.b * sc.b - 4.0 * sc.a * sc.c)) < 1e-12);
    }
}

TEST_CASE("classify3 returns the exact class for all six representatives") {
    for (SloccClass c : kAll) CHECK(classify3(rep(c)) == c);
}

TEST_CASE("classification is invariant under random orbits") {
    for (SloccClass c : kAll) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            PureState moved = random_slocc_orbit(rep(c), seed);
            CHECK(classify3(moved) == c);
        }
    }
}

TEST_CASE("classify3 is covariant under qubit permutations") {
    // swap qubits A and B: BiSep_A_BC <-> BiSep_B_CA, others fixed
    auto swap_ab = [](const PureState& psi) {
        Eigen::VectorXcd out(8);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) out(4 * b + 2 * a + c) = psi.amps(4 * a + 2 * b + c);
        return PureState({2, 2, 2}, out);
    };
    CHECK(classify3(swap_ab(rep(SloccClass::BiSep_A_BC))) == SloccClass::BiSep_B_CA);
    CHECK(classify3(swap_ab(rep(SloccClass::BiSep_C_AB))) == SloccClass::BiSep_C_AB);
    CHECK(classify3(swap_ab(rep(SloccClass::GHZ))) == SloccClass::GHZ);
    CHECK(classify3(swap_ab(rep(SloccClass::W))) == SloccClass::W);
}

TEST_CASE("partial order of the class diagram") {
    CHECK(slocc_geq(SloccClass::GHZ, SloccClass::BiSep_A_BC));
    CHECK(slocc_geq(SloccClass::W, SloccClass::ProductABC));
    CHECK(slocc_geq(SloccClass::BiSep_B_CA, SloccClass::ProductABC));
    CHECK_FALSE(slocc_geq(SloccClass::GHZ, SloccClass::W));
    CHECK_FALSE(slocc_geq(SloccClass::W, SloccClass::GHZ));
    CHECK_FALSE(slocc_geq(SloccClass::BiSep_A_BC, SloccClass::BiSep_B_CA));
    CHECK(slocc_geq(SloccClass::GHZ, SloccClass::GHZ));
}

TEST_CASE("ghz normal form reconstructs the GHZ representative") {
    GhzNormalForm nf = ghz_normal_form(rep(SloccClass::GHZ));
    PureState psi = rep(SloccClass::GHZ);
    CHECK((nf.reconstruct() - psi.amps).norm() < 1e-8);
}

TEST_CASE("ghz normal form reconstructs and its terms are simple") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        PureState psi = random_slocc_orbit(rep(SloccClass::GHZ), seed);
        GhzNormalForm nf = ghz_normal_form(psi);
        CHECK((nf.reconstruct() - psi.amps).norm() < 1e-8);
        for (int i = 0; i < 2; ++i) {
            // each summand's BC part |b_i>|c_i> must reshape to a rank-1 map
            Eigen::Vector4cd bc;
            const Eigen::Vector2cd &b = nf.b[i], &c = nf.c[i];
            bc << b(0) * c(0), b(0) * c(1), b(1) * c(0), b(1) * c(1);
            double scale = bc.norm();
            REQUIRE(scale > 0.0);
            CHECK(min_sv(bc) < 1e-9 * scale);
        }
    }
}

TEST_CASE("ghz normal form rejects other classes") {
    CHECK_THROWS_AS(ghz_normal_form(rep(SloccClass::W)), input_error);
    CHECK_THROWS_AS(ghz_normal_form(rep(SloccClass::ProductABC)), input_error);
}

TEST_CASE("rank-1 local map never raises the class above biseparable") {
    // a singular M1 collapses the A factor: the result is at most BiSep
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        Eigen::Vector2cd u(cxd(g(rng), g(rng)), cxd(g(rng), g(rng)));
        Eigen::Vector2cd w(cxd(g(rng), g(rng)), cxd(g(rng), g(rng)));
        Eigen::Matrix2cd m1 = u * w.adjoint(); // rank 1
        PureState psi = random_slocc_orbit(rep(SloccClass::GHZ), 1000 + t);
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(8);
        for (int a = 0; a < 2; ++a)
            for (int ap = 0; ap < 2; ++ap)
                for (int bc = 0; bc < 4; ++bc) out(4 * a + bc) += m1(a, ap) * psi.amps(4 * ap + bc);
        if (out.norm() < 1e-12) continue;
        SloccClass c = classify3(PureState({2, 2, 2}, out).normalized());
        CHECK_FALSE(c == SloccClass::GHZ);
        CHECK_FALSE(c == SloccClass::W);
    }
}

TEST_CASE("classification report carries ranks and discriminant") {
    Classification full = classify3_full(rep(SloccClass::GHZ));
    CHECK(full.cls == SloccClass::GHZ);
    CHECK(full.ranks == std::array<int, 3>{2, 2, 2});
    CHECK(full.discriminant_abs > 0.0);

    full = classify3_full(rep(SloccClass::BiSep_A_BC));
    CHECK(full.ranks[0] == 1);
    CHECK(std::isnan(full.discriminant_abs));
}

TEST_CASE("to_string covers all classes") {
    CHECK(to_string(SloccClass::GHZ) == "GHZ");
    CHECK(to_string(SloccClass::W) == "W");
    CHECK(to_string(SloccClass::ProductABC) == "A-B-C");
    CHECK(to_string(SloccClass::BiSep_B_CA) == "B-CA");
}
