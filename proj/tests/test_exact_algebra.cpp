#include "shiftprop/det.hpp"
#include "shiftprop/io.hpp"
#include "shiftprop/matrix.hpp"
#include "shiftprop/series.hpp"
#include "shiftprop/smith.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace shiftprop;

namespace {

Matrix<ZPlusRing> figure_matrix() {
    return Matrix<ZPlusRing>{{Int(0), Int(2), Int(1)}, {Int(0), Int(1), Int(1)}, {Int(0), Int(0), Int(1)}};
}

template <Semiring R>
Matrix<R> random_int_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi, R ring = R()) {
    std::uniform_int_distribution<int> dist(lo, hi);
    Matrix<R> m(rows, cols, ring);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = Int(dist(rng));
    return m;
}

IntPoly random_poly(std::mt19937& rng, int max_deg, int lo, int hi) {
    std::uniform_int_distribution<int> deg(0, max_deg), coeff(lo, hi);
    std::vector<Int> cs(static_cast<std::size_t>(deg(rng)) + 1);
    for (Int& c : cs) c = Int(coeff(rng));
    return IntPoly(std::move(cs));
}

/// Semiring law suite: associativity and commutativity of addition, the
/// additive identity, multiplicative associativity and identity,
/// distributivity, and annihilation by zero, on sampled triples.
template <Semiring R, class Sampler>
void check_semiring_laws(const R& ring, Sampler sample, int triples = 120) {
    for (int t = 0; t < triples; ++t) {
        auto a = sample(), b = sample(), c = sample();
        REQUIRE(ring.eq(ring.add(ring.add(a, b), c), ring.add(a, ring.add(b, c))));
        REQUIRE(ring.eq(ring.add(a, b), ring.add(b, a)));
        REQUIRE(ring.eq(ring.add(a, ring.zero()), a));
        REQUIRE(ring.eq(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c))));
        REQUIRE(ring.eq(ring.mul(a, ring.one()), a));
        REQUIRE(ring.eq(ring.mul(ring.one(), a), a));
        REQUIRE(ring.eq(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c))));
        REQUIRE(ring.eq(ring.mul(ring.add(b, c), a), ring.add(ring.mul(b, a), ring.mul(c, a))));
        REQUIRE(ring.eq(ring.mul(a, ring.zero()), ring.zero()));
        REQUIRE(ring.eq(ring.mul(ring.zero(), a), ring.zero()));
    }
}

}  // namespace

TEST_CASE("polynomial arithmetic and exact division") {
    IntPoly p({Int(1), Int(2)});   // 1 + 2t
    IntPoly q({Int(-1), Int(1)});  // t - 1
    REQUIRE((p * q).str() == "-1 - t + 2*t^2");
    REQUIRE(p.degree() == 1);
    REQUIRE(IntPoly().is_zero());
    REQUIRE(IntPoly(std::vector<Int>{Int(0), Int(0)}).is_zero());
    REQUIRE(IntPoly::exact_div(p * q, q) == p);
    REQUIRE(IntPoly::exact_div(p * q, p) == q);
    REQUIRE_THROWS_AS(IntPoly::exact_div(IntPoly({Int(1), Int(1)}), IntPoly({Int(0), Int(2)})),
                      std::domain_error);
    REQUIRE(IntPoly::t(2, Int(3)).str() == "3*t^2");
    REQUIRE(p.eval(Int(3)) == 7);
}

TEST_CASE("natinf absorbing conventions") {
    NatInf zero, one(Int(1)), inf = NatInf::infinity();
    REQUIRE(zero * inf == zero);
    REQUIRE(inf * zero == zero);
    REQUIRE(inf + zero == inf);
    REQUIRE(inf + NatInf(Int(7)) == inf);
    REQUIRE(inf * one == inf);
    REQUIRE((NatInf(Int(2)) * NatInf(Int(3))).finite_value() == 6);
    REQUIRE_THROWS_AS(NatInf(Int(-1)), std::domain_error);
}

TEST_CASE("matrix product basics") {
    auto m = figure_matrix();
    REQUIRE(Matrix<ZPlusRing>::identity(3) * m == m);
    REQUIRE(m * Matrix<ZPlusRing>::identity(3) == m);

    Matrix<ZPlusRing> row{{Int(1), Int(1)}};
    Matrix<ZPlusRing> col{{Int(1)}, {Int(1)}};
    Matrix<ZPlusRing> two{{Int(2)}};
    REQUIRE(row * col == two);

    Matrix<ZPlusRing> sq{{Int(0), Int(2), Int(3)}, {Int(0), Int(1), Int(2)}, {Int(0), Int(0), Int(1)}};
    REQUIRE(m * m == sq);

    Matrix<ZPlusRing> bad(2, 3);
    REQUIRE_THROWS_AS(bad * bad, std::invalid_argument);
    REQUIRE_THROWS_AS(Matrix<FpRing>(1, 1, FpRing(Int(3))) * Matrix<FpRing>(1, 1, FpRing(Int(5))),
                      std::invalid_argument);
}

TEST_CASE("direct sum") {
    auto m = figure_matrix();
    Matrix<ZPlusRing> empty(0, 0);
    REQUIRE(direct_sum(m, empty) == m);
    REQUIRE(direct_sum(empty, m) == m);

    Matrix<ZPlusRing> a{{Int(1)}}, b{{Int(2)}};
    Matrix<ZPlusRing> ab{{Int(1), Int(0)}, {Int(0), Int(2)}};
    REQUIRE(direct_sum(a, b) == ab);

    std::mt19937 rng(7);
    for (int t = 0; t < 30; ++t) {
        auto A = random_int_matrix<ZPlusRing>(rng, 2, 2, 0, 3);
        auto B = random_int_matrix<ZPlusRing>(rng, 2, 2, 0, 3);
        auto C = random_int_matrix<ZPlusRing>(rng, 2, 2, 0, 3);
        auto D = random_int_matrix<ZPlusRing>(rng, 2, 2, 0, 3);
        REQUIRE(direct_sum(A, B) * direct_sum(C, D) == direct_sum(A * C, B * D));
    }
}

TEST_CASE("permutation matrices") {
    REQUIRE(Matrix<ZPlusRing>::permutation(Permutation::identity(3)) == Matrix<ZPlusRing>::identity(3));

    Matrix<ZPlusRing> swap{{Int(0), Int(1)}, {Int(1), Int(0)}};
    REQUIRE(Matrix<ZPlusRing>::permutation(Permutation::block_swap(1, 1)) == swap);

    // block swap of 1 wire past 2, assembled from adjacent transpositions
    auto s01 = Matrix<ZPlusRing>::permutation(Permutation::transposition(3, 0, 1));
    auto s12 = Matrix<ZPlusRing>::permutation(Permutation::transposition(3, 1, 2));
    auto direct = Matrix<ZPlusRing>::permutation(Permutation::block_swap(1, 2));
    REQUIRE(s12 * s01 == direct);
    REQUIRE(direct.at(2, 0) == 1);  // wire 1 lands in position 3

    REQUIRE_THROWS_AS(Permutation({0, 0}), std::invalid_argument);
}

TEST_CASE("smith normal form examples") {
    SmithResult id3 = smith_normal_form(Matrix<ZRing>::identity(3));
    REQUIRE(id3.divisors == std::vector<Int>{Int(1), Int(1), Int(1)});
    REQUIRE(id3.free_rank == 0);

    SmithResult zero1 = smith_normal_form(Matrix<ZRing>{{Int(0)}});
    REQUIRE(zero1.divisors.empty());
    REQUIRE(zero1.free_rank == 1);

    SmithResult d23 = smith_normal_form(Matrix<ZRing>{{Int(2), Int(0)}, {Int(0), Int(3)}});
    REQUIRE(d23.divisors == std::vector<Int>{Int(1), Int(6)});
    REQUIRE(d23.free_rank == 0);
}

TEST_CASE("smith divisors invariant under unimodular elementary operations") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> size(1, 4), pick(0, 3), mult(-2, 2);
    for (int t = 0; t < 80; ++t) {
        std::size_t n = static_cast<std::size_t>(size(rng));
        auto m = random_int_matrix<ZRing>(rng, n, n, -3, 3);
        SmithResult base = smith_normal_form(m);

        Matrix<ZRing> e = Matrix<ZRing>::identity(n);
        if (n >= 2) {
            std::size_t i = static_cast<std::size_t>(pick(rng)) % n;
            std::size_t j = static_cast<std::size_t>(pick(rng)) % n;
            if (i == j) j = (j + 1) % n;
            e.at(i, j) = Int(mult(rng));
        }
        SmithResult pre = smith_normal_form(e * m);
        SmithResult post = smith_normal_form(m * e);
        REQUIRE(pre.divisors == base.divisors);
        REQUIRE(pre.free_rank == base.free_rank);
        REQUIRE(post.divisors == base.divisors);
        REQUIRE(post.free_rank == base.free_rank);
    }
}

TEST_CASE("determinants over Z[t]") {
    Matrix<PolyRing> one_by_one{{IntPoly({Int(1), Int(-2)})}};  // 1 - 2t
    REQUIRE(det_poly(one_by_one).str() == "1 - 2*t");

    REQUIRE(det_poly(Matrix<PolyRing>::identity(2)).str() == "1");

    // I - t * (the 3x3 upper-triangular example): product of the diagonal
    Matrix<PolyRing> fig(3, 3);
    auto m = figure_matrix();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            IntPoly e = IntPoly::t(1, -m.at(i, j));
            if (i == j) e = e + IntPoly(Int(1));
            fig.at(i, j) = e;
        }
    REQUIRE(det_poly(fig).str() == "1 - 2*t + t^2");

    REQUIRE(det_poly(Matrix<PolyRing>(0, 0)).str() == "1");
}

TEST_CASE("determinant is multiplicative") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> size(1, 3);
    for (int t = 0; t < 40; ++t) {
        std::size_t n = static_cast<std::size_t>(size(rng));
        Matrix<PolyRing> a(n, n), b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                a.at(i, j) = random_poly(rng, 1, -2, 2);
                b.at(i, j) = random_poly(rng, 1, -2, 2);
            }
        REQUIRE(det_poly(a * b) == det_poly(a) * det_poly(b));
    }
}

TEST_CASE("truncated series") {
    TruncatedSeries zero(4);
    REQUIRE(zero.exp().coeff(0) == 1);
    for (std::size_t i = 1; i <= 4; ++i) REQUIRE(zero.exp().coeff(i) == 0);

    TruncatedSeries geom = TruncatedSeries::from_poly(IntPoly({Int(1), Int(-2)}), 3).reciprocal();
    REQUIRE(geom.coeff(0) == 1);
    REQUIRE(geom.coeff(1) == 2);
    REQUIRE(geom.coeff(2) == 4);
    REQUIRE(geom.coeff(3) == 8);

    // exp(sum 2^n t^n / n) equals 1/(1 - 2t), computed along both routes
    TruncatedSeries log_route(4);
    Int pw(1);
    for (std::size_t n = 1; n <= 4; ++n) {
        pw *= 2;
        log_route.coeff(n) = Rat(pw) / Rat(n);
    }
    TruncatedSeries via_exp = log_route.exp();
    TruncatedSeries via_rec = TruncatedSeries::from_poly(IntPoly({Int(1), Int(-2)}), 4).reciprocal();
    REQUIRE(via_exp == via_rec);

    REQUIRE(via_rec.log() == log_route);
    REQUIRE_THROWS_AS(TruncatedSeries::from_poly(IntPoly({Int(2)}), 2).reciprocal(), std::domain_error);
    REQUIRE_THROWS_AS(TruncatedSeries::from_poly(IntPoly({Int(1)}), 2).exp(), std::domain_error);
}

TEST_CASE("semiring law suite over every registered ring") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> small(-5, 5), nat(0, 5), natinf(0, 8);

    check_semiring_laws(ZRing{}, [&] { return Int(small(rng)); });
    check_semiring_laws(ZPlusRing{}, [&] { return Int(nat(rng)); });
    check_semiring_laws(PolyRing{}, [&] { return random_poly(rng, 2, -3, 3); });
    check_semiring_laws(ZPlusPolyRing{}, [&] { return random_poly(rng, 2, 0, 3); });
    FpRing f5{Int(5)};
    check_semiring_laws(f5, [&] { return f5.reduce(Int(small(rng))); });
    check_semiring_laws(NatInfRing{}, [&]() -> NatInf {
        int v = natinf(rng);
        return v == 8 ? NatInf::infinity() : NatInf(Int(v));
    });
}

TEST_CASE("matrix document round trip") {
    auto m = parse_matrix<ZPlusRing>("0 2 1\n0 1 1\n0 0 1\n");
    REQUIRE(m == figure_matrix());
    REQUIRE(parse_matrix<ZPlusRing>(render_matrix(m)) == m);

    auto p = parse_matrix<ZPlusPolyRing>("0 1 0 0 t\n0 0 0 0 0\n0 0 0 0 1\n0 t^2+t 1 0 0\n");
    REQUIRE(p.at(3, 1).str() == "t + t^2");
    REQUIRE(parse_matrix<ZPlusPolyRing>(render_matrix(p)) == p);

    auto z = parse_matrix<PolyRing>("1-2t 3\n-t^3 0\n");
    REQUIRE(z.at(0, 0).str() == "1 - 2*t");
    REQUIRE(z.at(1, 0).str() == "-t^3");
    REQUIRE(parse_matrix<PolyRing>(render_matrix(z)) == z);

    REQUIRE_THROWS_AS(parse_matrix<ZPlusRing>(""), DocParseError);
    REQUIRE_THROWS_AS(parse_matrix<ZPlusRing>("1 2\n3\n"), DocParseError);
    REQUIRE_THROWS_AS(parse_matrix<ZPlusRing>("-1\n"), DocParseError);
    REQUIRE_THROWS_AS(parse_matrix<FpRing>("7\n", FpRing(Int(5))), DocParseError);
}
