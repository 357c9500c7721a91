#include "steklov/harmonic_spaces.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace steklov;

namespace {

long C(long n, long k) {
    if (n < 0 || k < 0) return 0;
    return binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)).get_si();
}

}  // namespace

TEST_CASE("polynomial form space dimensions") {
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= 4; ++k)
            for (int p = 0; p <= n + 1; ++p) {
                const FormSubspace P = build_Pkp(n, k, p);
                CHECK(P.dim() == C(n + k, k) * C(n + 1, p));
            }
}

TEST_CASE("harmonic space examples") {
    // linear functions in three variables are all harmonic
    CHECK(build_Hkp(2, 1, 0).dim() == 3);

    // constant-coefficient 1-forms: all closed, none radial-kernel
    const FormSubspace H01 = build_Hkp(2, 0, 1);
    CHECK(H01.dim() == 3);
    const auto [closed01, radial01] = split_H(H01);
    CHECK(closed01.dim() == 3);
    CHECK(radial01.dim() == 0);

    // top-degree coefficient forms f vol need df = 0
    for (int n = 2; n <= 3; ++n) {
        CHECK(build_Hkp(n, 0, n + 1).dim() == 1);
        for (int k = 1; k <= 3; ++k) CHECK(build_Hkp(n, k, n + 1).dim() == 0);
    }
}

TEST_CASE("harmonic polynomial dimensions match the classical formula") {
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= 5; ++k) {
            const int expect = static_cast<int>(C(n + k, k) - C(n + k - 2, k - 2));
            CHECK(build_Hkp(n, k, 0).dim() == expect);
            CHECK(multiplicity(n, k, 0) == expect);
        }
}

TEST_CASE("basis members satisfy their defining equations exactly") {
    for (int n = 2; n <= 3; ++n)
        for (int k = 0; k <= 2; ++k)
            for (int p = 0; p <= n; ++p) {
                const FormSubspace H = build_Hkp(n, k, p);
                for (const PForm& w : H.basis) {
                    CHECK(hodge_laplacian(w).is_zero());
                    if (p >= 1) CHECK(codifferential(w).is_zero());
                    CHECK(w.has_homogeneous_coefficients(k));
                }
                const auto [closed, radial] = split_H(H);
                for (const PForm& w : closed.basis)
                    if (k >= 1 && p <= n) CHECK(exterior_d(w).is_zero());
                for (const PForm& w : radial.basis)
                    if (p >= 1) CHECK(interior_radial(w).is_zero());
            }
}

TEST_CASE("the split is a direct sum away from the constant-function corner") {
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= 5; ++k)
            for (int p = 0; p <= n + 1; ++p) {
                if (k == 0 && p == 0) continue;  // constants are in both halves
                const FormSubspace H = build_Hkp(n, k, p);
                const auto [closed, radial] = split_H(H);
                CHECK(closed.dim() + radial.dim() == H.dim());
            }
}

TEST_CASE("the differential is a bijection between the paired subspaces") {
    for (int n = 1; n <= 3; ++n)
        for (int k = 1; k <= 4; ++k)
            for (int p = 0; p <= n; ++p) {
                const auto rep = check_d_isomorphism(n, k, p);
                INFO("n=" << n << " k=" << k << " p=" << p);
                CHECK(rep.holds());
                CHECK(rep.dim_source == rep.dim_target);
            }
}

TEST_CASE("split members keep a uniform parity signature") {
    const FormSubspace H = build_Hkp(3, 2, 1);
    const auto [closed, radial] = split_H(H);
    for (const PForm& w : H.basis) CHECK(has_uniform_signature(w));
    for (const PForm& w : closed.basis) CHECK(has_uniform_signature(w));
    for (const PForm& w : radial.basis) CHECK(has_uniform_signature(w));
}

TEST_CASE("dimension table") {
    const auto rows = subspace_dimension_table(2, 2);
    CHECK(rows.size() == 3 * 4);  // k in 0..2, p in 0..3
    // find (k,p) = (1,1)
    bool found = false;
    for (const auto& r : rows)
        if (r.k == 1 && r.p == 1) {
            found = true;
            CHECK(r.dim_polynomial == 9);
            CHECK(r.dim_harmonic == 8);
            CHECK(r.dim_closed == 5);
            CHECK(r.dim_radial_kernel == 3);
        }
    CHECK(found);
}

TEST_CASE("space index validation") {
    CHECK_THROWS_AS(build_Pkp(0, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_Pkp(2, -1, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_Pkp(2, 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(check_d_isomorphism(2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(check_d_isomorphism(2, 1, 3), std::invalid_argument);
    // split rejects a non-harmonic input space
    FormSubspace P = build_Pkp(2, 1, 1);
    CHECK_THROWS_AS(split_H(P), std::invalid_argument);
}

TEST_CASE("enumeration orders are deterministic") {
    const auto ms = monomials_of_degree(3, 2);
    REQUIRE(ms.size() == 6);
    CHECK(ms.front() == MultiIndex{0, 0, 2});
    CHECK(ms.back() == MultiIndex{2, 0, 0});
    for (size_t i = 1; i < ms.size(); ++i) CHECK(GradedLexLess{}(ms[i - 1], ms[i]));

    const auto ts = increasing_tuples(4, 2);
    REQUIRE(ts.size() == 6);
    CHECK(ts.front() == IndexTuple{1, 2});
    CHECK(ts.back() == IndexTuple{3, 4});

    // building twice yields identical bases
    const FormSubspace a = build_Hkp(2, 2, 1);
    const FormSubspace b = build_Hkp(2, 2, 1);
    REQUIRE(a.dim() == b.dim());
    for (int i = 0; i < a.dim(); ++i)
        CHECK(a.basis[static_cast<size_t>(i)] == b.basis[static_cast<size_t>(i)]);
}
