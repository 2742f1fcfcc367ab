#include <doctest.h>

#include "kwcalc/brackets.hpp"
#include "kwcalc/errors.hpp"
#include "kwcalc/higher.hpp"
#include "kwcalc/verify.hpp"
#include "support/generators.hpp"

using namespace kw;

namespace {

GradedElement coord(const SpecPtr& s, CoordKind k, int i) {
    return GradedElement::coordinate(s, k, i);
}

std::vector<GradedElement> random_tuple(kwtest::Gen& gen, const SpecPtr& spec, int len,
                                        int max_x) {
    std::vector<GradedElement> out;
    for (int i = 0; i < len; ++i) out.push_back(gen.section(spec, max_x, 2));
    return out;
}

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return num / den;
}

} // namespace

TEST_SUITE("brackets") {

TEST_CASE("unshuffle enumeration") {
    auto u11 = unshuffles(1, 1);
    REQUIRE(u11.size() == 2);
    CHECK(u11[0].perm == std::vector<int>{0, 1});
    CHECK(u11[0].sign == 1);
    CHECK(u11[1].perm == std::vector<int>{1, 0});
    CHECK(u11[1].sign == -1);

    CHECK(unshuffles(2, 1).size() == 3);
    auto u0k = unshuffles(0, 4);
    REQUIRE(u0k.size() == 1);
    CHECK(u0k[0].sign == 1);

    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) {
            auto us = unshuffles(i, j);
            CHECK(static_cast<long>(us.size()) == binomial(i + j, i));
            for (const auto& sp : us) {
                for (int k = 1; k < i; ++k) CHECK(sp.perm[k - 1] < sp.perm[k]);
                for (int k = i + 1; k < i + j; ++k) CHECK(sp.perm[k - 1] < sp.perm[k]);
            }
        }
}

TEST_CASE("degree-1 generators evaluate to themselves") {
    auto s = BundleSpec::identity(1, 2);
    GradedElement e = coord(s, CoordKind::Xi, 1) + coord(s, CoordKind::Xi, 2);
    MultiBracket c(e);
    CHECK(kw_eval(c, {}) == e);
    kwtest::Gen gen(3);
    for (int t = 0; t < 10; ++t) {
        GradedElement arg = gen.section(s, 1, 2);
        CHECK(kw_eval_tilde(c, {arg}) == section_pairing(e, arg));
    }
}

TEST_CASE("split-model generator kills constant sections") {
    auto s = BundleSpec::split(2);
    MultiBracket c(standard_courant_theta(s));
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b)
            CHECK(kw_eval(c, {coord(s, CoordKind::Xi, a), coord(s, CoordKind::Xi, b)}).is_zero());
}

TEST_CASE("odd quartic contracts to the remaining factor") {
    auto s = BundleSpec::identity(1, 4);
    GradedElement theta = coord(s, CoordKind::Xi, 1) * coord(s, CoordKind::Xi, 2) *
                          coord(s, CoordKind::Xi, 3) * coord(s, CoordKind::Xi, 4);
    MultiBracket c(theta);
    std::vector<GradedElement> args = {coord(s, CoordKind::Xi, 1), coord(s, CoordKind::Xi, 2),
                                       coord(s, CoordKind::Xi, 3)};
    GradedElement value = kw_eval(c, args);
    CHECK(value == coord(s, CoordKind::Xi, 4));
    // iterated interior pairing computes the same value
    GradedElement acc = theta;
    for (const auto& e : args) acc = pairing(e, acc);
    CHECK(acc == value);
}

TEST_CASE("tilde evaluation is the pairing with the last slot") {
    auto s = BundleSpec::split(1);
    kwtest::Gen gen(5);
    for (int t = 0; t < 15; ++t) {
        MultiBracket c(gen.homogeneous(s, gen.uniform(2, 4), 1, 3));
        auto args = random_tuple(gen, s, c.n(), 1);
        std::vector<GradedElement> head(args.begin(), args.end() - 1);
        CHECK(kw_eval_tilde(c, args) == section_pairing(kw_eval(c, head), args.back()));
    }
}

TEST_CASE("tilde symmetry defect is the symbol of the pairing") {
    auto s = BundleSpec::identity(2, 2);
    kwtest::Gen gen(7);
    for (int t = 0; t < 15; ++t) {
        const int n = gen.uniform(2, 4);
        MultiBracket c(gen.homogeneous(s, n, 1, 3), n);
        auto args = random_tuple(gen, s, n, 1);
        const int i = gen.uniform(0, n - 2);
        auto swapped = args;
        std::swap(swapped[static_cast<std::size_t>(i)], swapped[static_cast<std::size_t>(i + 1)]);
        std::vector<GradedElement> rest;
        for (int k = 0; k < n; ++k)
            if (k != i && k != i + 1) rest.push_back(args[static_cast<std::size_t>(k)]);
        GradedElement lhs = kw_eval_tilde(c, args) + kw_eval_tilde(c, swapped);
        GradedElement rhs = kw_symbol(c, rest).apply(
            section_pairing(args[static_cast<std::size_t>(i)],
                            args[static_cast<std::size_t>(i + 1)]));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("multivectors have zero symbol") {
    auto s = BundleSpec::identity(2, 3);
    GradedElement p3 = coord(s, CoordKind::Xi, 1) * coord(s, CoordKind::Xi, 2) *
                       coord(s, CoordKind::Xi, 3);
    CHECK(kw_symbol(MultiBracket(p3), {coord(s, CoordKind::Xi, 1)}).is_zero());
    GradedElement d2 = coord(s, CoordKind::X, 1) * coord(s, CoordKind::Xi, 1) *
                       coord(s, CoordKind::Xi, 2);
    CHECK(kw_symbol(MultiBracket(d2), {}).is_zero());
}

TEST_CASE("split-model symbol has the coordinate-derivation pattern") {
    auto s = BundleSpec::split(2);
    MultiBracket c(standard_courant_theta(s));
    // dual-type basis sections act on the base, generator-type ones do not
    SymbolValue dual = kw_symbol(c, {coord(s, CoordKind::Xi, 3)});
    CHECK(dual.images[0].str() == "-1");
    CHECK(dual.images[1].is_zero());
    SymbolValue gen_type = kw_symbol(c, {coord(s, CoordKind::Xi, 1)});
    CHECK(gen_type.is_zero());
}

TEST_CASE("symbol vanishes on the family iff the generator is p-free") {
    auto s = BundleSpec::identity(2, 2);
    kwtest::Gen gen(11);
    auto family = monomial_sections(s, 1);
    for (int t = 0; t < 25; ++t) {
        const int n = gen.uniform(2, 4);
        GradedElement theta = (t % 2 == 0) ? gen.homogeneous(s, n, 1, 3)
                                           : gen.multivector(s, n, 1, 3);
        if (theta.is_zero()) continue;
        MultiBracket c(theta);
        bool all_zero = true;
        for_each_tuple(family.size(), static_cast<std::size_t>(n - 2),
                       [&](const std::vector<std::size_t>& idx) {
                           std::vector<GradedElement> tuple;
                           for (auto i : idx) tuple.push_back(family[i]);
                           if (!kw_symbol(c, tuple).is_zero()) {
                               all_zero = false;
                               return false;
                           }
                           return true;
                       });
        CHECK(all_zero == theta.is_multivector());
    }
}

TEST_CASE("product generator clauses") {
    auto s = BundleSpec::identity(1, 3);
    kwtest::Gen gen(13);
    GradedElement f = gen.homogeneous(s, 0, 2, 2);
    GradedElement e = gen.section(s, 1, 2);
    // f ^ e = fe = e ^ f
    MultiBracket fe = kw_wedge(MultiBracket(f, 0), MultiBracket(e, 1));
    CHECK(fe.theta() == f * e);
    CHECK(fe.theta() == kw_wedge(MultiBracket(e, 1), MultiBracket(f, 0)).theta());
    // e ^ e = 0
    CHECK(kw_wedge(MultiBracket(e, 1), MultiBracket(e, 1)).theta().is_zero());
    // multivector product is the exterior product
    GradedElement P = gen.multivector(s, 2, 1, 2);
    GradedElement Q = gen.multivector(s, 1, 1, 2);
    CHECK(kw_wedge(MultiBracket(P, 2), MultiBracket(Q, 1)).theta() == P * Q);
}

TEST_CASE("product: generator route equals the unshuffle route") {
    auto s = BundleSpec::split(1);
    kwtest::Gen gen(17);
    for (int t = 0; t < 12; ++t) {
        const int n = gen.uniform(1, 3), m = gen.uniform(1, 3);
        MultiBracket c1(gen.homogeneous(s, n, 1, 2), n);
        MultiBracket c2(gen.homogeneous(s, m, 1, 2), m);
        MultiBracket prod = kw_wedge(c1, c2);
        for (int k = 0; k < 4; ++k) {
            auto args = random_tuple(gen, s, n + m - 1, 1);
            CHECK(kw_eval(prod, args) == kw_wedge_eval(c1, c2, args));
        }
    }
}

TEST_CASE("product symbol formula matches the symbol of the product") {
    auto s = BundleSpec::identity(1, 2);
    kwtest::Gen gen(19);
    for (int t = 0; t < 10; ++t) {
        const int n = gen.uniform(1, 3), m = gen.uniform(1, 3);
        if (n + m < 2) continue;
        MultiBracket c1(gen.homogeneous(s, n, 1, 2), n);
        MultiBracket c2(gen.homogeneous(s, m, 1, 2), m);
        MultiBracket prod = kw_wedge(c1, c2);
        for (int k = 0; k < 3; ++k) {
            auto args = random_tuple(gen, s, n + m - 2, 1);
            GradedElement f = gen.homogeneous(s, 0, 2, 2);
            CHECK(kw_symbol(prod, args).apply(f) == kw_wedge_symbol_apply(c1, c2, args, f));
        }
    }
}

TEST_CASE("interior product low-degree rules") {
    auto s = BundleSpec::identity(1, 3);
    kwtest::Gen gen(23);
    GradedElement e = gen.section(s, 1, 2);
    GradedElement e1 = gen.section(s, 1, 2);
    GradedElement f = gen.homogeneous(s, 0, 2, 2);
    // i_e e1 = <e, e1>
    CHECK(interior_eval(MultiBracket(e1, 1), MultiBracket(e, 1), {}) == section_pairing(e, e1));
    // i_e f = 0
    CHECK(interior_eval(MultiBracket(f, 0), MultiBracket(e, 1), {}).is_zero());
    // i_e C inserts into the first slot
    MultiBracket c(gen.homogeneous(s, 3, 1, 3));
    for (int t = 0; t < 5; ++t) {
        GradedElement arg = gen.section(s, 1, 2);
        CHECK(interior_eval(c, MultiBracket(e, 1), {arg}) == kw_eval(c, {e, arg}));
    }
}

TEST_CASE("the two interior product formulas agree") {
    auto s = BundleSpec::split(1);
    kwtest::Gen gen(29);
    for (int n = 2; n <= 4; ++n)
        for (int m = 2; m <= 4; ++m) {
            MultiBracket c1(gen.homogeneous(s, n, 1, 3), n);
            MultiBracket c2(gen.homogeneous(s, m, 1, 3), m);
            for (int t = 0; t < 4; ++t) {
                auto args = random_tuple(gen, s, n + m - 3, 1);
                CHECK(interior_eval(c1, c2, args) == interior_eval_unshuffle(c1, c2, args));
            }
        }
}

TEST_CASE("interior product with an inserted section is a bracket") {
    auto s = BundleSpec::identity(1, 2);
    kwtest::Gen gen(31);
    for (int t = 0; t < 8; ++t) {
        const int n = gen.uniform(2, 4);
        MultiBracket c1(gen.homogeneous(s, n, 1, 2), n);
        MultiBracket ce(gen.section(s, 1, 2), 1);
        MultiBracket prod = interior_product(c1, ce);
        CHECK(prod.n() == n - 1);
        for (int k = 0; k < 4; ++k) {
            auto args = random_tuple(gen, s, n - 2, 1);
            CHECK(kw_eval(prod, args) == interior_eval(c1, ce, args));
        }
        // its symbol inserts the section into the first slot
        if (n >= 3) {
            auto args = random_tuple(gen, s, n - 3, 1);
            GradedElement x1 = coord(s, CoordKind::X, 1);
            CHECK(kw_symbol(prod, args).apply(x1) == interior_symbol_apply(c1, ce, args, x1));
        }
    }
}

TEST_CASE("composing two derivative endomorphisms leaves the bracket space") {
    // the interior product alone need not admit a generator
    auto s = BundleSpec::identity(1, 2);
    GradedElement theta = coord(s, CoordKind::X, 1) * GradedElement::coordinate(s, CoordKind::P, 1);
    MultiBracket d(theta, 2);
    CHECK_THROWS_AS(interior_product(d, d), Error);
}

TEST_CASE("interior symbol formula is consistent with the bracket symbol") {
    // sigma(i_{C1}C2) - (-1)^{nm} sigma(i_{C2}C1) is the symbol of [C1,C2]
    auto s = BundleSpec::identity(1, 2);
    kwtest::Gen gen(37);
    for (int t = 0; t < 8; ++t) {
        const int n = gen.uniform(2, 3), m = gen.uniform(2, 3);
        if (n + m < 5) continue; // the symbol needs a slot
        MultiBracket c1(gen.homogeneous(s, n, 1, 2), n);
        MultiBracket c2(gen.homogeneous(s, m, 1, 2), m);
        MultiBracket br = kw_bracket(c1, c2);
        for (int k = 0; k < 3; ++k) {
            auto args = random_tuple(gen, s, n + m - 4, 1);
            GradedElement x1 = coord(s, CoordKind::X, 1);
            GradedElement a = interior_symbol_apply(c2, c1, args, x1);
            GradedElement b = interior_symbol_apply(c1, c2, args, x1);
            GradedElement combo = ((n * m) % 2 == 0) ? a - b : a + b;
            CHECK(kw_symbol(br, args).apply(x1) == combo);
        }
    }
}

TEST_CASE("bracket clauses of low degree") {
    auto s = BundleSpec::identity(2, 2);
    kwtest::Gen gen(41);
    GradedElement f = gen.homogeneous(s, 0, 2, 2);
    GradedElement g = gen.homogeneous(s, 0, 2, 2);
    GradedElement e = gen.section(s, 1, 2);
    GradedElement ep = gen.section(s, 1, 2);
    GradedElement delta = gen.homogeneous(s, 2, 1, 3);

    MultiBracket bf(f, 0), bg(g, 0), be(e, 1), bep(ep, 1), bd(delta, 2);

    CHECK(kw_bracket(bf, bg).theta().is_zero());
    CHECK(kw_bracket_clauses(bf, bg)->theta().is_zero());
    CHECK(kw_bracket(bf, be).theta().is_zero());
    CHECK(kw_bracket(be, bf).theta().is_zero());

    // [e,e'] = <e,e'>; the clause value is computed from the metric alone
    CHECK(kw_bracket(be, bep).theta() == section_pairing(e, ep));
    CHECK(kw_bracket_clauses(be, bep)->theta() == section_pairing(e, ep));

    // [f,D] = sigma_D.f = -[D,f]
    GradedElement sf = kw_symbol(bd, {}).apply(f);
    CHECK(kw_bracket(bf, bd).theta() == sf);
    CHECK(kw_bracket_clauses(bf, bd)->theta() == sf);
    CHECK(kw_bracket(bd, bf).theta() == -sf);

    // [e,C] = i_e C = (-1)^{n+1}[C,e]
    MultiBracket c(gen.homogeneous(s, 3, 1, 3));
    GradedElement arg = gen.section(s, 1, 2);
    CHECK(kw_eval(kw_bracket(be, c), {arg}) == kw_eval(c, {e, arg}));
    GradedElement lhs = kw_bracket(be, c).theta();
    GradedElement rhs = kw_bracket(c, be).theta();
    if ((c.n() + 1) % 2 == 1) rhs = -rhs;
    CHECK(lhs == rhs);
}

TEST_CASE("bracket: generator route equals the explicit route") {
    auto s = BundleSpec::split(1);
    kwtest::Gen gen(43);
    for (int t = 0; t < 12; ++t) {
        const int n = gen.uniform(1, 4), m = gen.uniform(1, 4);
        if (n + m < 3) continue;
        MultiBracket c1(gen.homogeneous(s, n, 1, 2), n);
        MultiBracket c2(gen.homogeneous(s, m, 1, 2), m);
        MultiBracket br = kw_bracket(c1, c2);
        for (int k = 0; k < 4; ++k) {
            auto args = random_tuple(gen, s, n + m - 3, 1);
            CHECK(kw_eval(br, args) == kw_bracket_eval(c1, c2, args));
        }
    }
}

TEST_CASE("even-degree generators bracket to zero with themselves") {
    auto s = BundleSpec::identity(2, 3);
    kwtest::Gen gen(47);
    for (int t = 0; t < 10; ++t) {
        MultiBracket c(gen.homogeneous(s, 4, 1, 4), 4);
        CHECK(kw_bracket(c, c).theta().is_zero());
    }
}

TEST_CASE("insertion is a derivation of the bracket") {
    // i_e[C1,C2] = [i_e C1, C2] + (-1)^n [C1, i_e C2]
    auto s = BundleSpec::split(1);
    kwtest::Gen gen(53);
    for (int t = 0; t < 10; ++t) {
        const int n = gen.uniform(2, 3), m = gen.uniform(2, 3);
        MultiBracket c1(gen.homogeneous(s, n, 1, 2), n);
        MultiBracket c2(gen.homogeneous(s, m, 1, 2), m);
        GradedElement e = gen.section(s, 1, 2);
        MultiBracket ie1(pbracket(e, c1.theta()), n - 1);
        MultiBracket ie2(pbracket(e, c2.theta()), m - 1);
        GradedElement lhs = pbracket(e, kw_bracket(c1, c2).theta());
        GradedElement rhs = kw_bracket(ie1, c2).theta();
        GradedElement cross = kw_bracket(c1, ie2).theta();
        rhs = (n % 2 == 0) ? rhs + cross : rhs - cross;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("insertion commutes with the generator correspondence") {
    auto s = BundleSpec::identity(2, 2);
    kwtest::Gen gen(59);
    for (int t = 0; t < 10; ++t) {
        const int n = gen.uniform(2, 4);
        MultiBracket c(gen.homogeneous(s, n, 1, 3), n);
        GradedElement e = gen.section(s, 1, 2);
        MultiBracket inserted(pbracket(e, c.theta()), n - 1);
        auto args = random_tuple(gen, s, n - 2, 1);
        std::vector<GradedElement> full = {e};
        full.insert(full.end(), args.begin(), args.end());
        CHECK(kw_eval(inserted, args) == kw_eval(c, full));
    }
}

TEST_CASE("bracket of multivectors has zero symbol") {
    auto s = BundleSpec::identity(2, 3);
    kwtest::Gen gen(61);
    for (int t = 0; t < 10; ++t) {
        GradedElement P = gen.multivector(s, gen.uniform(1, 3), 1, 2);
        GradedElement Q = gen.multivector(s, gen.uniform(1, 3), 1, 2);
        if (P.is_zero() || Q.is_zero()) continue;
        MultiBracket br = kw_bracket(MultiBracket(P), MultiBracket(Q));
        if (br.n() < 2) continue;
        auto family = monomial_sections(s, 1);
        bool zero = true;
        for_each_tuple(family.size(), static_cast<std::size_t>(br.n() - 2),
                       [&](const std::vector<std::size_t>& idx) {
                           std::vector<GradedElement> tuple;
                           for (auto i : idx) tuple.push_back(family[i]);
                           if (!kw_symbol(br, tuple).is_zero()) {
                               zero = false;
                               return false;
                           }
                           return true;
                       });
        CHECK(zero);
    }
}

TEST_CASE("extension to function arguments") {
    auto s = BundleSpec::split(2);
    MultiBracket c(standard_courant_theta(s));
    kwtest::Gen gen(67);
    GradedElement x1 = coord(s, CoordKind::X, 1);

    // the anchor image of a dual-type section
    GradedElement e3 = coord(s, CoordKind::Xi, 3);
    CHECK(extend_to_functions(c, {e3, x1}) == kw_symbol(c, {e3}).apply(x1));
    CHECK(extend_to_functions(c, {e3, x1}).str() == "-1");

    // slot independence
    for (int t = 0; t < 10; ++t) {
        GradedElement e = gen.section(s, 1, 2);
        GradedElement f = gen.homogeneous(s, 0, 2, 2);
        CHECK(extend_to_functions(c, {e, f}) == extend_to_functions(c, {f, e}));
    }

    // two function slots vanish
    GradedElement f = gen.homogeneous(s, 0, 2, 2);
    GradedElement g = gen.homogeneous(s, 0, 2, 2);
    CHECK(extend_to_functions(c, {f, g}).is_zero());

    // multivector generators annihilate function slots
    auto s2 = BundleSpec::identity(1, 3);
    GradedElement p3 = coord(s2, CoordKind::Xi, 1) * coord(s2, CoordKind::Xi, 2) *
                       coord(s2, CoordKind::Xi, 3);
    CHECK(extend_to_functions(MultiBracket(p3),
                              {coord(s2, CoordKind::Xi, 1),
                               GradedElement::coordinate(s2, CoordKind::X, 1)})
              .is_zero());
}

TEST_CASE("printed expansion of the cubic bracket") {
    auto terms = kw_bracket_expansion(3, 3);
    std::vector<std::string> expected = {
        "+C1(C2(e1, e2), e3)", "-C1(e1, C2(e2, e3))", "+C1(e2, C2(e1, e3))",
        "+C2(C1(e1, e2), e3)", "-C2(e1, C1(e2, e3))", "+C2(e2, C1(e1, e3))",
    };
    CHECK(terms == expected);
}

TEST_CASE("evaluators reject malformed argument lists") {
    auto s = BundleSpec::identity(1, 2);
    MultiBracket c(coord(s, CoordKind::Xi, 1) * coord(s, CoordKind::Xi, 2) *
                   GradedElement::coordinate(s, CoordKind::P, 1));
    CHECK_THROWS_AS(kw_eval(c, {coord(s, CoordKind::Xi, 1)}), Error);
    CHECK_THROWS_AS(kw_eval(c, {coord(s, CoordKind::Xi, 1), coord(s, CoordKind::Xi, 2)}), Error);
    CHECK_THROWS_AS(kw_eval(c, {coord(s, CoordKind::Xi, 1), coord(s, CoordKind::Xi, 2),
                                GradedElement::coordinate(s, CoordKind::X, 1)}),
                    Error);
}

} // TEST_SUITE
