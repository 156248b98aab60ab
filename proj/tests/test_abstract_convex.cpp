#include <doctest.h>

#include "equilib/abstract_convex.hpp"
#include "equilib/random.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using equilib::AbstractConvexSpace;
using equilib::ExtRational;
using equilib::product_space;
using equilib::FiniteTopology;
using equilib::Labels;
using equilib::Mask;
using equilib::QuasiMode;
using equilib::Rational;
using equilib::SemiSense;
using equilib::SetCorrespondence;
using equilib::ValueMode;

namespace {

AbstractConvexSpace identity3() {
    return AbstractConvexSpace::identity_rule(gen::letters(3), gen::letters(3));
}

AbstractConvexSpace constant3(const std::string& anchor) {
    return AbstractConvexSpace::constant_rule(gen::letters(3), gen::letters(3), anchor);
}

// X = {a,b,c}, D = {a,b}: Gamma{a} = {a}, Gamma{b} = {b}, Gamma{a,b} = X.
AbstractConvexSpace bursting_pair() {
    return AbstractConvexSpace(gen::letters(3), gen::letters(2), {0, 0b001, 0b010, 0b111});
}

} // namespace

TEST_CASE("space construction validates the table") {
    Labels points = gen::letters(2);
    Labels seeds = gen::letters(2);
    CHECK_THROWS_AS(AbstractConvexSpace(points, seeds, {0, 0b01, 0b10}), equilib::InputError);
    CHECK_THROWS_AS(AbstractConvexSpace(points, seeds, {0, 0b01, 0, 0b11}),
                    equilib::InputError); // empty value
    CHECK_THROWS_AS(AbstractConvexSpace(points, seeds, {0, 0b01, 0b100, 0b11}),
                    equilib::InputError); // value outside points
    CHECK_NOTHROW(AbstractConvexSpace(points, seeds, {0, 0b01, 0b10, 0b11}));
}

TEST_CASE("gamma hull") {
    SUBCASE("identity structure returns the subset itself") {
        const auto space = identity3();
        CHECK(gamma_hull(space, 0b011) == 0b011);
    }
    SUBCASE("constant structure returns the anchor") {
        const auto space = constant3("c");
        CHECK(gamma_hull(space, 0b011) == 0b100);
        CHECK(gamma_hull(space, 0b111) == 0b100);
    }
    SUBCASE("the pair table unions all three entries") {
        const auto space = bursting_pair();
        CHECK(gamma_hull(space, 0b11) == oracle::gamma_hull(space, 0b11));
        CHECK(gamma_hull(space, 0b11) == 0b111);
    }
    SUBCASE("empty subset is rejected") {
        CHECK_THROWS_AS(gamma_hull(identity3(), 0), equilib::InputError);
    }
    SUBCASE("hull matches the oracle and is monotone on random spaces") {
        equilib::RandomSource rng(991);
        for (int trial = 0; trial < 200; ++trial) {
            const auto space = gen::random_space(rng, 5, 4);
            const Mask d1 = (rng.next() & space.seed_universe());
            const Mask d2 = d1 | (rng.next() & space.seed_universe());
            if (d1 == 0) continue;
            CHECK(gamma_hull(space, d1) == oracle::gamma_hull(space, d1));
            CHECK(equilib::subset_of(gamma_hull(space, d1), gamma_hull(space, d2)));
        }
    }
}

TEST_CASE("relative gamma convexity") {
    const auto space = identity3();
    CHECK(is_gamma_convex_relative(space, space.point_universe(), 0b011));
    CHECK_FALSE(is_gamma_convex_relative(space, 0b001, 0b011));
    const auto constant = constant3("c");
    CHECK(is_gamma_convex_relative(constant, 0b100, 0b111));
    CHECK_THROWS_AS(is_gamma_convex_relative(space, 0b001, 0), equilib::InputError);

    // hull(D') ⊆ Y iff Y is Gamma-convex relative to D'
    equilib::RandomSource rng(992);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = gen::random_space(rng, 5, 4);
        const Mask dprime = rng.next() & s.seed_universe();
        if (dprime == 0) continue;
        const Mask y = rng.next() & s.point_universe();
        CHECK(is_gamma_convex_relative(s, y, dprime) ==
              equilib::subset_of(oracle::gamma_hull(s, dprime), y));
        CHECK(is_gamma_convex_relative(s, gamma_hull(s, dprime), dprime));
    }
}

TEST_CASE("gamma convexity (Y ∩ D form)") {
    CHECK(is_gamma_convex(identity3(), 0));
    equilib::RandomSource rng(993);
    for (Mask y = 0; y <= 0b111; ++y) CHECK(is_gamma_convex(identity3(), y));
    const auto constant = constant3("c");
    CHECK_FALSE(is_gamma_convex(constant, 0b010)); // hull({b}) = {c} escapes {b}
    CHECK(is_gamma_convex(constant, 0b110));       // contains the anchor

    // seeds outside points are a precondition error
    const AbstractConvexSpace mixed(gen::letters(2), Labels({"z1"}), {0, 0b01});
    CHECK_THROWS_AS(is_gamma_convex(mixed, 0b01), equilib::PreconditionError);
}

TEST_CASE("subspace") {
    SUBCASE("full carrier and seed set reproduce the space") {
        const auto space = identity3();
        const auto sub = subspace(space, space.point_universe(), space.seed_universe());
        CHECK(sub.points().same_names(space.points()));
        CHECK(sub.seeds().same_names(space.seeds()));
        CHECK(sub.gamma_table() == space.gamma_table());
    }
    SUBCASE("constant structure restricts to its anchor") {
        const auto space = constant3("c");
        const auto sub = subspace(space, 0b100, space.seed_universe());
        CHECK(sub.points().size() == 1);
        CHECK(sub.points().name(0) == "c");
        for (Mask a = 1; a < sub.gamma_table().size(); ++a) CHECK(sub.gamma_table()[a] == 0b1);
    }
    SUBCASE("identity restricts to an identity structure") {
        const auto space = identity3();
        const auto sub = subspace(space, 0b011, 0b011);
        const auto expected = AbstractConvexSpace::identity_rule(gen::letters(2), gen::letters(2));
        CHECK(sub.gamma_table() == expected.gamma_table());
    }
    SUBCASE("rejection names the violating subset") {
        const auto space = identity3();
        CHECK_THROWS_WITH_AS(subspace(space, 0b001, 0b011),
                             doctest::Contains("not Gamma-convex"), equilib::PreconditionError);
    }
}

TEST_CASE("product space") {
    SUBCASE("single factor is returned unchanged") {
        const auto space = identity3();
        const auto prod = product_space({space});
        CHECK(prod.points().same_names(space.points()));
        CHECK(prod.gamma_table() == space.gamma_table());
    }
    SUBCASE("two constant structures give the constant pair") {
        const auto p = AbstractConvexSpace::constant_rule(gen::letters(2), gen::letters(2), "a");
        const auto q = AbstractConvexSpace::constant_rule(gen::letters(2), gen::letters(2), "b");
        const auto prod = product_space({p, q});
        REQUIRE(prod.points().size() == 4);
        const Mask pair = equilib::bit(prod.points().index_of("(a,b)"));
        for (Mask a = 1; a < prod.gamma_table().size(); ++a) CHECK(prod.gamma_table()[a] == pair);
    }
    SUBCASE("identity x identity expands to the projection product") {
        const auto p = AbstractConvexSpace::identity_rule(gen::letters(2), gen::letters(2));
        const auto prod = product_space({p, p});
        REQUIRE(prod.seeds().size() == 4);
        // oracle: for each A, Gamma(A) = pi_1(A) x pi_2(A), computed directly
        for (Mask a = 1; a < (Mask{1} << 4); ++a) {
            Mask pi1 = 0;
            Mask pi2 = 0;
            for (int s : equilib::mask_bits(a)) {
                pi1 |= equilib::bit(s / 2);
                pi2 |= equilib::bit(s % 2);
            }
            Mask expected = 0;
            for (int i : equilib::mask_bits(pi1))
                for (int j : equilib::mask_bits(pi2)) expected |= equilib::bit(i * 2 + j);
            CHECK(prod.gamma_table()[a] == expected);
        }
    }
    SUBCASE("output always satisfies the space invariants") {
        equilib::RandomSource rng(994);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<AbstractConvexSpace> factors;
            const int k = rng.range(1, 3);
            for (int i = 0; i < k; ++i)
                factors.push_back(gen::random_square_space(rng, rng.range(1, 2),
                                                           gen::pick_style(rng)));
            const auto prod = product_space(factors); // constructor re-validates
            CHECK(prod.gamma_table()[0] == 0);
        }
    }
    SUBCASE("oversized products hit the cap") {
        const auto big = AbstractConvexSpace::identity_rule(gen::letters(4), gen::letters(4));
        CHECK_THROWS_AS(product_space({big, big}), equilib::CapError);
    }
}

TEST_CASE("KKM correspondence test") {
    const auto space = identity3();
    SetCorrespondence all_x{space.seeds(),
                            {space.point_universe(), space.point_universe(),
                             space.point_universe()}};
    CHECK(is_kkm_correspondence(space, all_x));

    SetCorrespondence singletons{space.seeds(), {0b001, 0b010, 0b100}};
    CHECK(is_kkm_correspondence(space, singletons));

    const auto full = AbstractConvexSpace::full_rule(gen::letters(3), gen::letters(3));
    CHECK_FALSE(is_kkm_correspondence(full, singletons));

    SetCorrespondence wrong_domain{gen::letters(2), {0b001, 0b010}};
    CHECK_THROWS_AS(is_kkm_correspondence(space, wrong_domain), equilib::InputError);
}

TEST_CASE("KKM principle enumeration") {
    const auto discrete = FiniteTopology::discrete(gen::letters(3));
    SUBCASE("constant structure holds") {
        const auto verdict = check_kkm_principle(constant3("c"), discrete, ValueMode::closed);
        CHECK(verdict.holds);
        CHECK(verdict.exhaustive);
    }
    SUBCASE("identity structure fails with the singleton counterexample") {
        const auto verdict = check_kkm_principle(identity3(), discrete, ValueMode::closed);
        REQUIRE_FALSE(verdict.holds);
        REQUIRE(verdict.counterexample.has_value());
        const auto& ce = *verdict.counterexample;
        CHECK(ce.f.values == std::vector<Mask>{0b001, 0b010, 0b100});
        CHECK(ce.empty_family == 0b011); // F(a) ∩ F(b) is already empty
        CHECK(is_kkm_correspondence(identity3(), ce.f));
        for (Mask v : ce.f.values) CHECK(discrete.is_closed(v));
        Mask inter = ~Mask{0};
        for (int z : equilib::mask_bits(ce.empty_family)) inter &= ce.f.values[z];
        CHECK(inter == 0);
    }
    SUBCASE("full structure holds (the KKM condition forces F = X)") {
        const auto full = AbstractConvexSpace::full_rule(gen::letters(3), gen::letters(3));
        const auto verdict = check_kkm_principle(full, discrete, ValueMode::closed);
        CHECK(verdict.holds);
    }
    SUBCASE("open mode on the discrete space agrees with closed mode") {
        const auto closed = check_kkm_principle(identity3(), discrete, ValueMode::closed);
        const auto open = check_kkm_principle(identity3(), discrete, ValueMode::open);
        CHECK(closed.holds == open.holds);
    }
    SUBCASE("cap is enforced") {
        CHECK_THROWS_AS(check_kkm_principle(identity3(), discrete, ValueMode::closed, 10),
                        equilib::CapError);
    }
}

TEST_CASE("KKM enumeration agrees with the unrestricted brute-force oracle") {
    equilib::RandomSource rng(4242);
    int disagreements = 0;
    int counterexamples = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = rng.range(1, 3);
        const auto space = gen::random_square_space(rng, n, gen::pick_style(rng));
        const auto topo = rng.chance(1, 2) ? FiniteTopology::discrete(space.points())
                                           : gen::random_topology(rng, space.points());
        for (const auto mode : {ValueMode::closed, ValueMode::open}) {
            const auto verdict = check_kkm_principle(space, topo, mode);
            const auto expected =
                oracle::kkm_principle(space, topo, mode == ValueMode::closed);
            if (verdict.holds != expected.holds) ++disagreements;
            if (!verdict.holds && !expected.holds) {
                ++counterexamples;
                // identical first counterexample: the candidate restriction
                // preserves the enumeration order of KKM correspondences
                CHECK(verdict.counterexample->f.values == expected.counterexample_values);
                CHECK(verdict.counterexample->empty_family == expected.counterexample_family);
            }
        }
    }
    CHECK(disagreements == 0);
    CHECK(counterexamples > 20);
}

TEST_CASE("KKM sampling fallback") {
    const auto discrete = FiniteTopology::discrete(gen::letters(3));
    SUBCASE("constant structure yields no counterexample") {
        const auto verdict =
            falsify_kkm_random(constant3("c"), discrete, ValueMode::closed, 500, 7);
        CHECK(verdict.holds);
        CHECK_FALSE(verdict.exhaustive);
    }
    SUBCASE("identity structure is falsified within 1000 samples") {
        const auto verdict = falsify_kkm_random(identity3(), discrete, ValueMode::closed, 1000, 7);
        REQUIRE_FALSE(verdict.holds);
        REQUIRE(verdict.counterexample.has_value());
        CHECK(is_kkm_correspondence(identity3(), verdict.counterexample->f));
    }
    SUBCASE("zero samples are rejected") {
        CHECK_THROWS_AS(falsify_kkm_random(identity3(), discrete, ValueMode::closed, 0, 7),
                        equilib::InputError);
    }
    SUBCASE("sampling never contradicts a holding enumeration") {
        equilib::RandomSource rng(995);
        for (int trial = 0; trial < 40; ++trial) {
            const int n = rng.range(1, 3);
            const auto space = gen::random_square_space(rng, n, gen::pick_style(rng));
            const auto topo = gen::random_topology(rng, space.points());
            const auto exact = check_kkm_principle(space, topo, ValueMode::closed);
            if (!exact.holds) continue;
            const auto sampled =
                falsify_kkm_random(space, topo, ValueMode::closed, 200, rng.next());
            CHECK(sampled.holds);
        }
    }
}

TEST_CASE("KKM-holding spaces keep the property on every seed restriction") {
    // Restricting the seed set (the carrier stays X) preserves the partial
    // KKM principle; checked over structured and random small spaces.
    equilib::RandomSource rng(996);
    int verified = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const int n = rng.range(1, 3);
        const auto space = gen::random_square_space(rng, n, gen::pick_style(rng));
        const auto topo = rng.chance(1, 2) ? FiniteTopology::discrete(space.points())
                                           : gen::random_topology(rng, space.points());
        if (!check_kkm_principle(space, topo, ValueMode::closed).holds) continue;
        ++verified;
        const Mask full = space.seed_universe();
        for (Mask dprime = 1; dprime <= full; ++dprime) {
            if (!equilib::subset_of(dprime, full)) continue;
            const auto sub = subspace(space, space.point_universe(), dprime);
            CHECK(check_kkm_principle(sub, topo, ValueMode::closed).holds);
        }
    }
    CHECK(verified > 10);
}

TEST_CASE("quasiconcavity and quasiconvexity") {
    const auto identity = identity3();
    const std::vector<ExtRational> some_f = {ExtRational(Rational(1)), ExtRational(Rational(0)),
                                             ExtRational(Rational(2))};
    CHECK(check_quasi(identity, some_f, QuasiMode::concave));
    CHECK(check_quasi(identity, some_f, QuasiMode::convex));

    const auto constant2 =
        AbstractConvexSpace::constant_rule(gen::letters(2), gen::letters(2), "a");
    const std::vector<ExtRational> constant_f = {ExtRational(Rational(3)),
                                                 ExtRational(Rational(3))};
    CHECK(check_quasi(constant2, constant_f, QuasiMode::concave));
    CHECK(check_quasi(constant2, constant_f, QuasiMode::convex));

    // f(a)=0, f(d)=1 on the constant-anchor structure: the upper set at 0 is
    // {d} whose hull {a} escapes it
    const std::vector<ExtRational> split = {ExtRational(Rational(0)), ExtRational(Rational(1))};
    CHECK_FALSE(check_quasi(constant2, split, QuasiMode::concave));
    CHECK(check_quasi(constant2, split, QuasiMode::convex));

    CHECK_THROWS_AS(check_quasi(constant2, some_f, QuasiMode::concave), equilib::InputError);
}

namespace {

std::vector<equilib::Rational> midpoint_thresholds(std::vector<equilib::Rational> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<equilib::Rational> out = values;
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        out.push_back((values[i] + values[i + 1]) / equilib::Rational(2));
    out.push_back(values.front() - equilib::Rational(1));
    out.push_back(values.back() + equilib::Rational(1));
    return out;
}

bool oracle_level_set_convex(const AbstractConvexSpace& space, Mask level) {
    Mask meet = 0;
    for (int s = 0; s < space.seeds().size(); ++s) {
        const auto& name = space.seeds().name(s);
        if (space.points().contains(name) &&
            (level & equilib::bit(space.points().index_of(name))))
            meet |= equilib::bit(s);
    }
    if (meet == 0) return true;
    return equilib::subset_of(oracle::gamma_hull(space, meet), level);
}

} // namespace

TEST_CASE("quasi thresholds at achieved values are exhaustive") {
    // the checker only scans achieved values plus a sentinel; the oracle also
    // scans midpoints and both extremes
    equilib::RandomSource rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = rng.range(1, 4);
        const auto space = gen::random_square_space(rng, n, gen::pick_style(rng));
        std::vector<equilib::Rational> raw;
        std::vector<ExtRational> f;
        for (int x = 0; x < n; ++x) {
            raw.emplace_back(rng.range(-2, 2));
            f.emplace_back(raw.back());
        }
        for (const auto mode : {QuasiMode::concave, QuasiMode::convex}) {
            bool expected = true;
            for (const auto& r : midpoint_thresholds(raw)) {
                Mask level = 0;
                for (int x = 0; x < n; ++x) {
                    const bool in = mode == QuasiMode::concave ? raw[x] > r : raw[x] < r;
                    if (in) level |= equilib::bit(x);
                }
                expected = expected && oracle_level_set_convex(space, level);
            }
            CHECK(check_quasi(space, f, mode) == expected);
        }
    }
}

TEST_CASE("semicontinuity thresholds at achieved values are exhaustive") {
    equilib::RandomSource rng(31338);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = rng.range(1, 3);
        const int d = rng.range(1, 3);
        equilib::Labels seeds = [&] {
            std::vector<std::string> names;
            for (int i = 0; i < d; ++i) names.push_back("z" + std::to_string(i + 1));
            return equilib::Labels(std::move(names));
        }();
        const AbstractConvexSpace space(gen::letters(n), seeds,
                                        std::vector<Mask>(std::size_t{1} << d,
                                                          equilib::full_mask(n)));
        const auto topo = gen::random_topology(rng, gen::letters(n));
        std::vector<std::vector<equilib::Rational>> raw(
            static_cast<std::size_t>(d), std::vector<equilib::Rational>(static_cast<std::size_t>(n)));
        std::vector<std::vector<ExtRational>> f(
            static_cast<std::size_t>(d), std::vector<ExtRational>(static_cast<std::size_t>(n)));
        std::vector<equilib::Rational> all;
        for (int z = 0; z < d; ++z)
            for (int y = 0; y < n; ++y) {
                raw[z][y] = equilib::Rational(rng.range(-2, 2));
                f[z][y] = ExtRational(raw[z][y]);
                all.push_back(raw[z][y]);
            }
        for (const auto sense : {SemiSense::lower, SemiSense::upper}) {
            bool expected = true;
            for (const auto& r : midpoint_thresholds(all)) {
                SetCorrespondence corr;
                corr.domain = seeds;
                for (int z = 0; z < d; ++z) {
                    Mask value = 0;
                    for (int y = 0; y < n; ++y) {
                        const bool in =
                            sense == SemiSense::lower ? raw[z][y] <= r : raw[z][y] >= r;
                        if (in) value |= equilib::bit(y);
                    }
                    corr.values.push_back(value);
                }
                expected =
                    expected && classify_correspondence(topo, corr).intersectionally_closed;
            }
            CHECK(check_glsc(space, topo, f, sense) == expected);
        }
    }
}

TEST_CASE("general semicontinuity") {
    const auto space2 = AbstractConvexSpace::full_rule(gen::letters(2), gen::letters(2));
    SUBCASE("discrete topology accepts everything") {
        const auto t = FiniteTopology::discrete(gen::letters(2));
        equilib::RandomSource rng(997);
        std::vector<std::vector<ExtRational>> f(2, std::vector<ExtRational>(2));
        for (auto& row : f)
            for (auto& v : row) v = gen::random_value(rng, true);
        CHECK(check_glsc(space2, t, f, SemiSense::lower));
        CHECK(check_glsc(space2, t, f, SemiSense::upper));
    }
    SUBCASE("constant functions pass on any topology") {
        equilib::RandomSource rng(998);
        const auto t = gen::random_topology(rng, gen::letters(2));
        std::vector<std::vector<ExtRational>> f(
            2, std::vector<ExtRational>(2, ExtRational(Rational(5))));
        CHECK(check_glsc(space2, t, f, SemiSense::lower));
        CHECK(check_glsc(space2, t, f, SemiSense::upper));
    }
    SUBCASE("the indiscrete split example fails") {
        const auto t = FiniteTopology::indiscrete(gen::letters(2));
        // seed rows z1, z2 over points {a, b}: sublevel sets at 0 are {a}
        // and {b}, whose closures intersect in X while the closure of the
        // empty intersection is empty
        std::vector<std::vector<ExtRational>> f = {
            {ExtRational(Rational(0)), ExtRational(Rational(1))},
            {ExtRational(Rational(1)), ExtRational(Rational(0))}};
        CHECK_FALSE(check_glsc(space2, t, f, SemiSense::lower));
    }
    SUBCASE("short rows are rejected") {
        const auto t = FiniteTopology::discrete(gen::letters(2));
        std::vector<std::vector<ExtRational>> f = {{ExtRational(Rational(0))}};
        CHECK_THROWS_AS(check_glsc(space2, t, f, SemiSense::lower), equilib::InputError);
    }
}
