#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "oriflag/errors.hpp"
#include "oriflag/ideals.hpp"

using namespace oriflag;

namespace {

std::set<std::vector<std::string>> as_set(const BalancedCensus& c) {
    std::set<std::vector<std::string>> out;
    for (const auto& I : c.ideals) out.insert(I.encodings());
    return out;
}

struct Sl3 {
    GroupContext ctx{3};
    PositionSpace space{ctx, ParabolicType::trivial(ctx), ParabolicType::trivial(ctx)};
    InvolutionAction action{space, antidiag(ctx, {1, -1, 1})};
};

}  // namespace

TEST_CASE("ideal construction") {
    Sl3 s;
    CHECK(Ideal::empty(s.space).size() == 0);
    CHECK(Ideal::full(s.space).size() == 24);
    Bitset b(24);
    b.set(23);
    CHECK_THROWS_AS(Ideal(s.space, b), Error);
    const auto I = Ideal::generated_by(s.space, {23});
    CHECK(I.size() == 17);
}

TEST_CASE("fat and slim on small posets") {
    const GroupContext ctx(2);
    const auto full_type = ParabolicType::make(ctx, {}, mbar_elements(ctx));
    const PositionSpace chain(ctx, full_type, full_type);
    const InvolutionAction swap(chain, antidiag(ctx, {1, -1}));
    CHECK(is_slim(Ideal::empty(chain), swap));
    CHECK_FALSE(is_fat(Ideal::empty(chain), swap));
    CHECK(is_fat(Ideal::full(chain), swap));
    CHECK_FALSE(is_slim(Ideal::full(chain), swap));
    CHECK(is_balanced(Ideal::generated_by(chain, {0}), swap));

    // the two middle classes of the sphere diamond form an antichain swapped by w0
    const auto ex = sphere_example(3);
    const PositionSpace diamond(ex.ctx, ex.R, ex.S);
    const InvolutionAction sigma(diamond, ex.w0);
    CHECK(is_balanced(Ideal::generated_by(diamond, {1}), sigma));
    CHECK(is_balanced(Ideal::generated_by(diamond, {2}), sigma));
    CHECK_FALSE(is_slim(Ideal::generated_by(diamond, {1, 2}), sigma));
    CHECK_FALSE(is_fat(Ideal::generated_by(diamond, {0}), sigma));
}

TEST_CASE("SL(3) census, case (i)") {
    Sl3 s;
    const auto census = enumerate_balanced(s.action);
    CHECK(census.count() == 21);
    CHECK(census.mbar_classes.size() == 7);
    std::size_t covered = 0;
    for (const auto& block : census.mbar_classes) covered += block.size();
    CHECK(covered == 21);
    for (const auto& I : census.ideals) {
        CHECK(is_balanced(I, s.action));
        CHECK(I.size() == 12);
        for (const auto& m : mbar_elements(s.ctx)) CHECK(is_balanced(right_translate(I, m), s.action));
    }
    const auto j = census_json(census);
    CHECK(j["count"] == 21);
    CHECK(j["ideals"].size() == 21);
    CHECK(j["mbar_classes"].size() == 7);
}

TEST_CASE("SL(3) census, case (ii)") {
    const GroupContext ctx(3);
    const auto w0 = antidiag(ctx, {-1, 1, 1});
    const auto R = ParabolicType::make(ctx, {}, {identity(ctx), compose(w0, w0)});
    const PositionSpace space(ctx, R, ParabolicType::trivial(ctx));
    const InvolutionAction action(space, w0);
    CHECK(enumerate_balanced(action).count() == 1);
}

TEST_CASE("PSL(4) census") {
    const GroupContext ctx(4, true);
    const PositionSpace space(ctx, ParabolicType::trivial(ctx), ParabolicType::trivial(ctx));
    CHECK(space.size() == 96);
    const InvolutionAction action(space, antidiag(ctx, {-1, 1, -1, 1}));
    const auto census = enumerate_balanced(action);
    CHECK(census.count() == 4732);
}

TEST_CASE("census is independent of the linear extension and of jobs") {
    Sl3 s;
    const auto base = enumerate_balanced(s.action);
    EnumerateOptions reversed_ties;
    reversed_ties.order.resize(s.space.size());
    for (int c = 0; c < s.space.size(); ++c) reversed_ties.order[c] = c;
    std::stable_sort(reversed_ties.order.begin(), reversed_ties.order.end(), [&](int a, int b) {
        if (s.space.rank_of(a) != s.space.rank_of(b)) return s.space.rank_of(a) < s.space.rank_of(b);
        return a > b;
    });
    CHECK(as_set(enumerate_balanced(s.action, reversed_ties)) == as_set(base));
    EnumerateOptions parallel;
    parallel.jobs = 3;
    const auto par = enumerate_balanced(s.action, parallel);
    REQUIRE(par.count() == base.count());
    for (int i = 0; i < base.count(); ++i) CHECK(par.ideals[i] == base.ideals[i]);
}

TEST_CASE("minimal fat ideal") {
    Sl3 s;
    const auto census = enumerate_balanced(s.action);
    const auto I = minimal_fat_ideal(s.action);
    CHECK(is_balanced(I, s.action));
    CHECK(std::find(census.ideals.begin(), census.ideals.end(), I) != census.ideals.end());

    const auto ex = sphere_example(3);
    const PositionSpace diamond(ex.ctx, ex.R, ex.S);
    const InvolutionAction sigma(diamond, ex.w0);
    const auto J = minimal_fat_ideal(sigma);
    CHECK(J.size() == 2);
    CHECK(J.contains(0));
    CHECK(J.contains(1) != J.contains(2));
    CHECK(enumerate_balanced(sigma).count() == 2);
}

TEST_CASE("fixed point obstructs balanced ideals") {
    const GroupContext ctx(3);
    const auto R = ParabolicType::make(ctx, {}, mbar_elements(ctx));
    const auto S = ParabolicType::make(ctx, {2}, mbar_elements(ctx));
    const PositionSpace lines(ctx, R, S);
    CHECK(lines.size() == 3);
    const InvolutionAction action(lines, antidiag(ctx, {1, -1, 1}));
    CHECK(action.has_fixed_point());
    CHECK(enumerate_balanced(action).count() == 0);
    CHECK_THROWS_AS(minimal_fat_ideal(action), Error);
}

TEST_CASE("complementation duality") {
    Sl3 s;
    std::mt19937_64 rng(5);
    for (int t = 0; t < 500; ++t) {
        std::vector<int> seeds;
        for (int c = 0; c < s.space.size(); ++c)
            if (rng() % 5 == 0) seeds.push_back(c);
        const auto I = Ideal::generated_by(s.space, seeds);
        const auto J = complement_of_image(I, s.action);
        CHECK(is_fat(I, s.action) == is_slim(J, s.action));
        CHECK(complement_of_image(J, s.action) == I);
    }
}

TEST_CASE("grassmannian criterion") {
    CHECK(grassmannian_exists(5, 2));
    CHECK(grassmannian_exists(4, 1));
    CHECK_FALSE(grassmannian_exists(5, 1));
    CHECK(grassmannian_fixed_point_oracle(5, 2));
    CHECK_FALSE(grassmannian_fixed_point_oracle(7, 3));
    CHECK_FALSE(grassmannian_fixed_point_oracle(4, 2));
    for (int n = 3; n <= 8; ++n)
        for (int k = 1; k < n; ++k) CHECK(grassmannian_exists(n, k) == grassmannian_fixed_point_oracle(n, k));
    CHECK_THROWS_AS(grassmannian_exists(5, 0), Error);
    CHECK_THROWS_AS(grassmannian_exists(2, 1), Error);
}
