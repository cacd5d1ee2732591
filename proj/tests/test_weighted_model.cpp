#include "shiftprop/certificates.hpp"
#include "shiftprop/weighted.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace shiftprop;

namespace {

Matrix<ZPlusRing> random_zplus(std::mt19937& rng, std::size_t rows, std::size_t cols, int hi = 2) {
    std::uniform_int_distribution<int> dist(0, hi);
    Matrix<ZPlusRing> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = Int(dist(rng));
    return m;
}

/// Random weighted morphism on given wire counts, occasionally infinite.
Matrix<NatInfRing> random_weighted(std::mt19937& rng, const WeightedModel& model, std::size_t wires_in,
                                   std::size_t wires_out) {
    std::uniform_int_distribution<int> dist(0, 12);
    Matrix<NatInfRing> m(model.dim(wires_out), model.dim(wires_in));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            int v = dist(rng);
            if (v <= 2) m.at(i, j) = NatInf(Int(v));
            else if (v == 3) m.at(i, j) = NatInf::infinity();
            // else leave zero
        }
    return m;
}

struct ProbeCase {
    FiniteMonoid monoid;
    MonoidHom hom;
};

std::vector<ProbeCase> probe_cases() {
    std::vector<ProbeCase> out;
    auto triv = FiniteMonoid::trivial();
    out.push_back({triv, MonoidHom::identity(triv)});
    auto z2 = FiniteMonoid::cyclic(2);
    out.push_back({z2, MonoidHom::identity(z2)});
    out.push_back({z2, MonoidHom(z2, {0, 0})});
    auto z3 = FiniteMonoid::cyclic(3);
    out.push_back({z3, MonoidHom::identity(z3)});
    out.push_back({z3, MonoidHom(z3, {0, 2, 1})});
    auto z4 = FiniteMonoid::cyclic(4);
    out.push_back({z4, MonoidHom::identity(z4)});
    out.push_back({z4, MonoidHom(z4, {0, 2, 0, 2})});
    auto b2 = FiniteMonoid::subsets_under_union(2);
    out.push_back({b2, MonoidHom::identity(b2)});
    out.push_back({b2, MonoidHom(b2, {0, 1, 0, 1})});  // keep bit 0
    return out;
}

}  // namespace

TEST_CASE("monoid validation") {
    // non-associative magma: x*y = x except 1*1 = 0
    std::vector<std::vector<std::size_t>> bad{{0, 0}, {1, 0}};
    REQUIRE_THROWS_AS(FiniteMonoid(bad, 0), std::invalid_argument);

    // non-commutative (left projection)
    std::vector<std::vector<std::size_t>> proj{{0, 0}, {1, 1}};
    REQUIRE_THROWS_AS(FiniteMonoid(proj, 0), std::invalid_argument);

    auto z3 = FiniteMonoid::cyclic(3);
    REQUIRE(z3.size() == 3);
    REQUIRE(z3.op(1, 2) == 0);
    REQUIRE(z3.times(4, 2) == 2);  // 4 * 2 = 8 = 2 mod 3
    REQUIRE_THROWS_AS(MonoidHom(z3, {0, 1, 1}), std::invalid_argument);
    REQUIRE_THROWS_AS(MonoidHom(z3, {1, 2, 0}), std::invalid_argument);  // unit not fixed
}

TEST_CASE("weighted generator matrices") {
    auto triv = monoid_model(FiniteMonoid::trivial());
    for (auto kind : {Term::Kind::Mu, Term::Kind::Eta, Term::Kind::H}) {
        auto g = triv.generator(kind);
        REQUIRE(g.rows() == 1);
        REQUIRE(g.at(0, 0) == NatInf(Int(1)));
    }

    auto z2 = monoid_model(FiniteMonoid::cyclic(2));
    auto mu = z2.generator(Term::Kind::Mu);
    REQUIRE(mu.rows() == 2);
    REQUIRE(mu.cols() == 4);
    // ones exactly at (x+y, (x,y))
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t z = 0; z < 2; ++z)
                REQUIRE(mu.at(z, x * 2 + y) == (z == (x + y) % 2 ? NatInf(Int(1)) : NatInf()));

    // every probe model passes the full equation validation
    for (const auto& pc : probe_cases()) REQUIRE_NOTHROW(monoid_model(pc.monoid, pc.hom));
}

TEST_CASE("multiply-then-copy loop over the union monoid") {
    // one traced wire around a multiply-copy block: on input y the output z
    // is weighted by whether z stays fixed under joining y
    auto model = monoid_model(FiniteMonoid::subsets_under_union(2));
    auto result = eval_diagram(parse_term("(tr (c delta mu))"), model);
    const auto& w = std::get<ArityMatrix<NatInfRing>>(result);
    REQUIRE(w.wires_in == 1);
    REQUIRE(w.wires_out == 1);
    const NatInf one(Int(1)), zero;
    // indices: 0 = {}, 1 = {0}, 2 = {1}, 3 = {0,1}
    for (std::size_t z = 0; z < 4; ++z) REQUIRE(w.mat.at(z, 0) == one);
    REQUIRE(w.mat.at(0, 2) == zero);
    REQUIRE(w.mat.at(1, 2) == zero);
    REQUIRE(w.mat.at(2, 2) == one);
    REQUIRE(w.mat.at(3, 2) == one);
    for (std::size_t z = 0; z < 3; ++z) REQUIRE(w.mat.at(z, 3) == zero);
    REQUIRE(w.mat.at(3, 3) == one);
}

TEST_CASE("partial trace basics") {
    auto z3 = monoid_model(FiniteMonoid::cyclic(3));

    Matrix<NatInfRing> scalar3 = z3.partial_trace(z3.identity(1), 1, 1);
    REQUIRE(scalar3.rows() == 1);
    REQUIRE(scalar3.at(0, 0) == NatInf(Int(3)));

    REQUIRE(z3.partial_trace(z3.sym(), 2, 2) == z3.identity(1));

    // full trace of a function graph counts fixed points
    std::mt19937 rng(53);
    std::uniform_int_distribution<std::size_t> pick(0, 2);
    for (int t = 0; t < 30; ++t) {
        std::vector<std::size_t> g(3);
        for (auto& v : g) v = pick(rng);
        Matrix<NatInfRing> graph(3, 3);
        for (std::size_t x = 0; x < 3; ++x) graph.at(g[x], x) = NatInf(Int(1));
        std::size_t fixed = 0;
        for (std::size_t x = 0; x < 3; ++x)
            if (g[x] == x) ++fixed;
        REQUIRE(z3.partial_trace(graph, 1, 1).at(0, 0) == NatInf(Int(fixed)));
    }
}

TEST_CASE("trace axioms in the weighted model") {
    std::mt19937 rng(59);
    auto z2 = monoid_model(FiniteMonoid::cyclic(2));
    auto z3 = monoid_model(FiniteMonoid::cyclic(3));

    int checked = 0;
    for (int t = 0; t < 50; ++t) {
        const WeightedModel& model = t % 2 ? z3 : z2;
        std::uniform_int_distribution<std::size_t> wires(0, 1);
        std::size_t a = wires(rng), b = wires(rng);

        // Tightening: tr((id x g) f (id x h)) = g tr(f) h
        {
            std::size_t b2 = wires(rng), a2 = wires(rng);
            auto f = random_weighted(rng, model, 1 + a, 1 + b);
            auto g = random_weighted(rng, model, b, b2);
            auto h = random_weighted(rng, model, a2, a);
            auto lhs = model.partial_trace(
                kronecker(model.identity(1), g) * f * kronecker(model.identity(1), h), 1 + a2, 1 + b2);
            auto rhs = g * model.partial_trace(f, 1 + a, 1 + b) * h;
            REQUIRE(lhs == rhs);
            ++checked;
        }
        // Yanking: tr(sigma) = id
        REQUIRE(model.partial_trace(model.sym(), 2, 2) == model.identity(1));
        ++checked;
        // Sliding with a permutation g around the loop
        {
            std::vector<std::size_t> im(model.base());
            for (std::size_t i = 0; i < im.size(); ++i) im[i] = i;
            std::shuffle(im.begin(), im.end(), rng);
            Matrix<NatInfRing> g = Matrix<NatInfRing>::permutation(Permutation(std::move(im)));
            auto f = random_weighted(rng, model, 1 + a, 1 + b);
            auto lhs = model.partial_trace(f * kronecker(g, model.identity(a)), 1 + a, 1 + b);
            auto rhs = model.partial_trace(kronecker(g, model.identity(b)) * f, 1 + a, 1 + b);
            REQUIRE(lhs == rhs);
            ++checked;
        }
        // Strength: tr(f x g) = tr(f) x g
        {
            std::size_t c = wires(rng), e = wires(rng);
            auto f = random_weighted(rng, model, 1 + a, 1 + b);
            auto g = random_weighted(rng, model, c, e);
            auto lhs = model.partial_trace(kronecker(f, g), 1 + a + c, 1 + b + e);
            auto rhs = kronecker(model.partial_trace(f, 1 + a, 1 + b), g);
            REQUIRE(lhs == rhs);
            ++checked;
        }
    }
    REQUIRE(checked == 200);
}

TEST_CASE("fixed point counts by direct enumeration") {
    auto z2 = FiniteMonoid::cyclic(2);
    auto id2 = MonoidHom::identity(z2);
    REQUIRE(count_fixed_points(Matrix<ZPlusRing>{{Int(2)}}, z2, id2) == NatInf(Int(1)));
    REQUIRE(count_fixed_points(Matrix<ZPlusRing>{{Int(1)}}, z2, id2) == NatInf(Int(2)));

    auto z3 = FiniteMonoid::cyclic(3);
    auto id3 = MonoidHom::identity(z3);
    REQUIRE(count_fixed_points(Matrix<ZPlusRing>{{Int(1), Int(1)}, {Int(1), Int(0)}}, z3, id3) ==
            NatInf(Int(1)));

    // identity matrix fixes everything
    REQUIRE(count_fixed_points(Matrix<ZPlusRing>::identity(3), z3, id3) == NatInf(Int(27)));

    REQUIRE_THROWS_AS(count_fixed_points(Matrix<ZPlusRing>::identity(3), z3, id3, 10), std::domain_error);
}

TEST_CASE("diagram interpretation agrees with enumeration") {
    auto triv = FiniteMonoid::trivial();
    REQUIRE(interpret_matrix(Matrix<ZPlusRing>{{Int(5)}}, triv, MonoidHom::identity(triv)) ==
            NatInf(Int(1)));

    auto z2 = FiniteMonoid::cyclic(2);
    auto id2 = MonoidHom::identity(z2);
    REQUIRE(interpret_matrix(Matrix<ZPlusRing>{{Int(1)}}, z2, id2) == NatInf(Int(2)));
    REQUIRE(interpret_matrix(Matrix<ZPlusRing>{{Int(2)}}, z2, id2) == NatInf(Int(1)));

    std::mt19937 rng(61);
    auto cases = probe_cases();
    std::uniform_int_distribution<std::size_t> pick(0, cases.size() - 1), nd(1, 3);
    for (int t = 0; t < 100; ++t) {
        const auto& pc = cases[pick(rng)];
        std::size_t n = nd(rng);
        auto m = random_zplus(rng, n, n, 2);
        REQUIRE(interpret_matrix(m, pc.monoid, pc.hom) == count_fixed_points(m, pc.monoid, pc.hom));
    }
}

TEST_CASE("fixed point count is a factor-move invariant") {
    std::mt19937 rng(67);
    std::uniform_int_distribution<std::size_t> nd(1, 3), rd(1, 3);
    auto z2 = FiniteMonoid::cyclic(2);
    auto z3 = FiniteMonoid::cyclic(3);
    for (int t = 0; t < 60; ++t) {
        std::size_t n = nd(rng), r = rd(rng);
        auto rm = random_zplus(rng, n, r, 2);
        auto sm = random_zplus(rng, r, n, 2);
        const FiniteMonoid& monoid = t % 2 ? z3 : z2;
        MonoidHom id = MonoidHom::identity(monoid);
        REQUIRE(count_fixed_points(rm * sm, monoid, id) == count_fixed_points(sm * rm, monoid, id));
    }
}

TEST_CASE("fixed point count is a row-expansion invariant") {
    std::mt19937 rng(71);
    std::uniform_int_distribution<std::size_t> nd(2, 3);
    auto z2 = FiniteMonoid::cyclic(2);
    auto b2 = FiniteMonoid::subsets_under_union(2);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = nd(rng);
        auto m = random_zplus(rng, n, n, 2);
        std::uniform_int_distribution<std::size_t> rowd(0, n - 1);
        std::size_t row = rowd(rng);
        const FiniteMonoid& monoid = t % 2 ? b2 : z2;
        MonoidHom id = MonoidHom::identity(monoid);
        REQUIRE(count_fixed_points(ps_expand(m, row), monoid, id) == count_fixed_points(m, monoid, id));
    }
}
