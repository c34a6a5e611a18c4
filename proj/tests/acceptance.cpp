// Runs the ten acceptance checks and prints one PASS/FAIL line each.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oriflag/bruhat.hpp"
#include "oriflag/errors.hpp"
#include "oriflag/flags.hpp"
#include "oriflag/ideals.hpp"
#include "oriflag/limit_domain.hpp"
#include "oriflag/representations.hpp"

using namespace oriflag;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

void expect(Outcome& o, bool cond, const std::string& what) {
    if (!cond && o.ok) {
        o.ok = false;
        o.detail = what;
    }
}

Matrix random_sl(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Matrix g(n, n);
    for (;;) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = nd(rng);
        const double d = g.determinant();
        if (std::abs(d) < 1e-3) continue;
        if (d < 0) g.col(0) *= -1;
        return g / std::pow(std::abs(d), 1.0 / n);
    }
}

Matrix random_b0(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> off(-1, 1), dia(0.5, 2);
    Matrix u = Matrix::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) u(i, j) = off(rng);
    double prod = 1;
    for (int i = 0; i < n - 1; ++i) {
        const double d = dia(rng);
        u.col(i) *= d;
        prod *= d;
    }
    u.col(n - 1) /= prod;
    return u;
}

RationalMatrix random_b0_exact(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> off(-4, 4), dia(1, 4);
    RationalMatrix u = RationalMatrix::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) u(i, j) = Rational(off(rng), 2);
    Rational prod = 1;
    for (int i = 0; i < n - 1; ++i) {
        const Rational d(dia(rng), dia(rng));
        for (int r = 0; r < n; ++r) u(r, i) *= d;
        prod *= d;
    }
    for (int r = 0; r < n; ++r) u(r, n - 1) /= prod;
    return u;
}

SignedPermutation random_element(const std::vector<SignedPermutation>& all, std::mt19937_64& rng) {
    return all[rng() % all.size()];
}

std::vector<ParabolicType> some_types(const GroupContext& ctx) {
    std::vector<ParabolicType> out{ParabolicType::trivial(ctx), ParabolicType::make(ctx, {}, mbar_elements(ctx))};
    if (ctx.n >= 3) {
        out.push_back(ParabolicType::minimal(ctx, {1}));
        out.push_back(ParabolicType::minimal(ctx, {ctx.n - 1}));
    }
    return out;
}

Outcome census_sl3() {
    Outcome o;
    const GroupContext ctx(3);
    const PositionSpace space(ctx, ParabolicType::trivial(ctx), ParabolicType::trivial(ctx));
    const auto c = enumerate_balanced(InvolutionAction(space, antidiag(ctx, {1, -1, 1})));
    o.detail = "count=" + std::to_string(c.count()) + " classes=" + std::to_string(c.mbar_classes.size());
    expect(o, c.count() == 21 && c.mbar_classes.size() == 7, o.detail);
    return o;
}

Outcome census_case_ii() {
    Outcome o;
    const GroupContext ctx(3);
    const auto w0 = antidiag(ctx, {-1, 1, 1});
    const auto R = ParabolicType::make(ctx, {}, {identity(ctx), w0 * w0});
    const PositionSpace space(ctx, R, ParabolicType::trivial(ctx));
    const int count = enumerate_balanced(InvolutionAction(space, w0)).count();
    o.detail = "count=" + std::to_string(count);
    expect(o, count == 1, o.detail);
    return o;
}

Outcome census_psl4() {
    Outcome o;
    const GroupContext ctx(4, true);
    const auto w0 = bruhat_factorize(irreducible_rep_exact(4, rot90_exact()), true);
    const PositionSpace space(ctx, ParabolicType::trivial(ctx), ParabolicType::trivial(ctx));
    EnumerateOptions opts;
    opts.jobs = 4;
    const int count = enumerate_balanced(InvolutionAction(space, w0), opts).count();
    // the other identification: SL(4) with R = {1, w0^2} = {+-1}
    const GroupContext sl(4);
    const auto w0s = bruhat_factorize(irreducible_rep_exact(4, rot90_exact()));
    const auto R = ParabolicType::make(sl, {}, {identity(sl), w0s * w0s});
    const PositionSpace lifted(sl, R, ParabolicType::trivial(sl));
    const int count2 = enumerate_balanced(InvolutionAction(lifted, w0s), opts).count();
    o.detail = "projective count=" + std::to_string(count) + ", SL(4) with R={+-1}: " + std::to_string(count2);
    expect(o, count == 4732, o.detail);
    return o;
}

Outcome grassmannian() {
    Outcome o;
    int rows = 0;
    for (int n = 3; n <= 8; ++n)
        for (int k = 1; k < n; ++k) {
            const bool e = grassmannian_exists(n, k);
            const bool stated = (n % 2 == 0 && k % 2 == 1) || (n % 2 == 1 && (k * (n + k + 2) / 2) % 2 == 1);
            expect(o, e == grassmannian_fixed_point_oracle(n, k) && e == stated,
                   "n=" + std::to_string(n) + " k=" + std::to_string(k));
            ++rows;
        }
    if (o.ok) o.detail = std::to_string(rows) + " (n,k) pairs agree";
    return o;
}

Outcome diamond() {
    Outcome o;
    std::ostringstream d;
    for (int n : {3, 5, 7}) {
        const auto ex = sphere_example(n);
        const PositionSpace space(ex.ctx, ex.R, ex.S);
        const int count = enumerate_balanced(InvolutionAction(space, ex.w0)).count();
        d << "n=" << n << ": classes=" << space.size() << " ideals=" << count << "; ";
        expect(o, space.size() == 4 && count == 2, d.str());
    }
    o.detail = d.str();
    return o;
}

Outcome transversality_types() {
    Outcome o;
    expect(o, hitchin_w0(3) == antidiag(GroupContext(3), {1, -1, 1}), "n=3 Hitchin matrix");
    for (int n = 2; n <= 9; ++n)
        expect(o, bruhat_factorize(irreducible_rep_exact(n, rot90_exact()), n % 2 == 0) == hitchin_w0(n),
               "hitchin n=" + std::to_string(n));
    int checked = 0;
    for (int n = 3; n <= 9; n += 2)
        for (int k = 1; k < n; ++k) {
            expect(o, analyze_block_transversality(n, k).matches(),
                   "block n=" + std::to_string(n) + " k=" + std::to_string(k));
            ++checked;
        }
    if (o.ok) o.detail = "Hitchin n=2..9, " + std::to_string(checked) + " block types";
    return o;
}

Outcome factorization() {
    Outcome o;
    std::mt19937_64 rng(7001);
    int trips = 0;
    for (int n = 3; n <= 5; ++n) {
        const auto all = all_elements(GroupContext(n));
        for (int t = 0; t < 10000; ++t) {
            const auto w = random_element(all, rng);
            const RationalMatrix g = random_b0_exact(n, rng) * to_rational(w) * random_b0_exact(n, rng);
            if (bruhat_factorize(g) != w) {
                expect(o, false, "exact round trip failed for " + w.encode());
                break;
            }
            ++trips;
        }
    }
    int degenerate = 0;
    for (int t = 0; t < 1000000; ++t) {
        try {
            bruhat_factorize(random_sl(3, rng), 1e-9);
        } catch (const Error&) {
            ++degenerate;
        }
    }
    expect(o, degenerate == 0, std::to_string(degenerate) + " degenerate pivots");
    if (o.ok) o.detail = std::to_string(trips) + " exact round trips, 10^6 float factorizations";
    return o;
}

Outcome order_theory() {
    Outcome o;
    std::mt19937_64 rng(7002);
    for (int n = 2; n <= 4; ++n) {
        const auto all = all_elements(GroupContext(n));
        for (int t = 0; t < 100; ++t) {
            const auto w = random_element(all, rng);
            const auto a = lower_set(w, DescentRule::Smallest), b = lower_set(w, DescentRule::Largest);
            expect(o, std::set<SignedPermutation>(a.begin(), a.end()) == std::set<SignedPermutation>(b.begin(), b.end()),
                   "A_w depends on the word for " + w.encode());
        }
    }
    int spaces = 0;
    for (int n = 2; n <= 4; ++n) {
        const GroupContext ctx(n);
        for (const auto& R : some_types(ctx))
            for (const auto& S : some_types(ctx)) {
                const PositionSpace sp(ctx, R, S);
                ++spaces;
                for (int a = 0; a < sp.size(); ++a)
                    for (int b = 0; b < sp.size(); ++b) {
                        if (a != b) expect(o, !(sp.leq(a, b) && sp.leq(b, a)), "antisymmetry");
                        if (sp.leq(a, b)) expect(o, (sp.below(a) & ~sp.below(b)).none(), "transitivity");
                    }
                for (const auto& t : transverse_elements(ctx))
                    expect(o, sp.above(sp.class_of(t)).count() == 1, "transverse class not maximal");
            }
    }
    const GroupContext c3(3);
    const auto all3 = all_elements(c3);
    const auto q = conjugate_generator_set(c3);
    const ElementSet Q(q.begin(), q.end());
    int pairs = 0;
    for (const auto& a : all3)
        for (const auto& b : all3)
            if (length(b) == length(a) + 1) {
                expect(o, folding_check(a, b, Q) == leq_tilde(a, b), "folding vs covering " + a.encode());
                ++pairs;
            }
    if (o.ok) o.detail = std::to_string(spaces) + " spaces, " + std::to_string(pairs) + " folding pairs";
    return o;
}

Outcome geometry() {
    Outcome o;
    std::mt19937_64 rng(7003);
    const GroupContext ctx(3);
    const PositionSpace space(ctx, ParabolicType::trivial(ctx), ParabolicType::trivial(ctx));
    const auto all = all_elements(ctx);
    const auto transverse = transverse_elements(ctx);
    int violations = 0, boundary = 0;
    for (int t = 0; t < 1000; ++t) {
        const Matrix g = random_sl(3, rng);
        const auto w0 = random_element(transverse, rng);
        const auto f1 = OrientedFlag::canonicalize(g);
        const auto f2 = OrientedFlag::canonicalize(g * Matrix(w0.matrix()) * random_b0(3, rng));
        const auto f3 = OrientedFlag::canonicalize(f2.rotation() * Matrix(random_element(all, rng).matrix()) *
                                                   random_b0(3, rng));
        try {
            if (relative_position_element(f1, f2, ctx) != w0) {
                ++boundary;
                continue;
            }
            const int p13 = relative_position(f1, f3, space), p23 = relative_position(f2, f3, space);
            if (!space.leq(space.class_of(w0 * space.representative(p23)), p13)) ++violations;
        } catch (const Error&) {
            ++boundary;
        }
    }
    expect(o, violations == 0, std::to_string(violations) + " triangle violations");
    std::normal_distribution<double> nd;
    auto random_sub = [&](int n, int k) {
        Matrix m(n, k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) m(i, j) = nd(rng);
        return OrientedSubspace(m);
    };
    int sign_checks = 0;
    for (int t = 0; t < 500; ++t) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const int a = 1 + static_cast<int>(rng() % (n - 1));
        const int b = 1 + static_cast<int>(rng() % (n - a));
        const auto A = random_sub(n, a), B = random_sub(n, b);
        expect(o, oriented_sum(A, B).orientation_relative_to(oriented_sum(B, A)) == ((a * b) % 2 ? -1 : 1),
               "sum swap sign");
        const int c = std::max(1, n - a) + static_cast<int>(rng() % (n - std::max(1, n - a) + 1));
        const auto C = random_sub(n, a), D = random_sub(n, c);
        expect(o,
               oriented_intersection(C, D).orientation_relative_to(oriented_intersection(D, C)) ==
                   (((n - a) * (n - c)) % 2 ? -1 : 1),
               "intersection swap sign");
        sign_checks += 2;
    }
    if (o.ok)
        o.detail = "1000 triples (" + std::to_string(boundary) + " boundary skips), " + std::to_string(sign_checks) +
                   " swap-sign checks";
    return o;
}

Outcome domain_raster() {
    Outcome o;
    const auto ex = sphere_example(3);
    const PositionSpace space(ex.ctx, ex.R, ex.S);
    const auto ideal = positive_half_ideal(space);
    const auto spec = load_group_spec(std::string(ORIFLAG_DATA_DIR) + "/schottky_rank2.json");
    auto flags_of = [](const LimitSet& s) {
        std::vector<OrientedFlag> f;
        for (const auto& x : s.samples) f.push_back(x.flag);
        return f;
    };
    auto on_circle = [](const OrientedFlag& f, double phi) -> Vector {
        return std::cos(phi) * f.rotation().col(0) + std::sin(phi) * f.rotation().col(1);
    };

    // disjointness over transverse pairs, 10^4-point Fibonacci grid pushed onto each half circle
    const auto samples = sample_limit_set(spec, 3).samples;
    std::vector<Vector> grid;
    const double golden = std::numbers::pi * (3 - std::sqrt(5.0));
    for (int i = 0; i < 10000; ++i) {
        const double z = 1 - 2 * (i + 0.5) / 10000, r = std::sqrt(1 - z * z);
        grid.push_back(Eigen::Vector3d(r * std::cos(golden * i), r * std::sin(golden * i), z));
    }
    long violations = 0, pairs = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& f = samples[i].flag;
        std::vector<Vector> pts;
        for (const auto& q : grid) {
            const double a = f.rotation().col(0).dot(q), b = std::max(0.0, f.rotation().col(1).dot(q));
            if (std::hypot(a, b) > 0) pts.push_back(on_circle(f, std::atan2(b, a)));
        }
        for (std::size_t j = 0; j < samples.size(); ++j) {
            if (i == j || !is_transverse(relative_position_element(f, samples[j].flag, ex.ctx, 1e-9))) continue;
            ++pairs;
            const RemovedSet other(ideal, {samples[j].flag}, 1e-9);
            for (const auto& p : pts) violations += other.contains(p);
        }
    }
    expect(o, violations == 0 && pairs > 0, std::to_string(violations) + " disjointness violations");

    // Gamma-invariance
    const int L = 5;
    SampleOptions all_words;
    all_words.all_reduced_words = true;
    const auto closed = sample_limit_set(spec, L, all_words).samples;
    std::vector<OrientedFlag> cf;
    for (const auto& s : closed) cf.push_back(s.flag);
    const RemovedSet K(ideal, cf, 1e-9);
    std::mt19937_64 rng(7004);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ang(0, std::numbers::pi);
    std::vector<Vector> pts;
    for (int t = 0; t < 200; ++t) pts.push_back(Eigen::Vector3d(nd(rng), nd(rng), nd(rng)));
    std::vector<const LimitSample*> inner;
    for (const auto& s : closed)
        if (static_cast<int>(s.word.size()) <= L - 2) inner.push_back(&s);
    for (int t = 0; t < 200; ++t) pts.push_back(on_circle(inner[rng() % inner.size()]->flag, ang(rng)));
    int mismatches = 0, total = 0;
    for (const auto& g : spec.images())
        for (const Matrix& a : {g, Matrix(g.inverse())})
            for (const auto& p : pts) {
                ++total;
                mismatches += K.contains(p) != K.contains(a * p);
            }
    expect(o, mismatches * 100 < total, std::to_string(mismatches) + "/" + std::to_string(total) + " invariance mismatches");

    // monotone in L
    RenderOptions small;
    small.width = 120;
    small.height = 60;
    std::vector<RasterImage> imgs;
    for (int l = 2; l <= 5; ++l) imgs.push_back(render_sphere(ideal, flags_of(sample_limit_set(spec, l)), small));
    for (std::size_t k = 0; k + 1 < imgs.size(); ++k)
        for (std::size_t i = 0; i < imgs[k].pixels.size(); i += 3)
            expect(o, imgs[k].pixels[i] >= 128 || imgs[k + 1].pixels[i] < 128, "removed set shrank");

    // full render, twice
    const auto t0 = std::chrono::steady_clock::now();
    RenderOptions big;
    big.frame = light_cone_frame();
    const auto s8 = flags_of(sample_limit_set(spec, 8));
    const auto a = render_sphere(ideal, s8, big);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    big.jobs = 4;
    const auto b = render_sphere(ideal, s8, big);
    expect(o, a.pixels == b.pixels, "render not reproducible");
    expect(o, a.width == 400 && a.height == 200, "render size");
    expect(o, secs < 120, "render took " + std::to_string(secs) + " s");
    if (o.ok) {
        std::ostringstream d;
        d << pairs << " transverse pairs, " << mismatches << "/" << total << " invariance mismatches, L=8 render "
          << static_cast<int>(secs * 10) / 10.0 << " s with " << s8.size() << " samples";
        o.detail = d.str();
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
        {"SL(3) census: 21 balanced ideals in 7 classes", census_sl3},
        {"SL(3) case (ii): one balanced ideal", census_case_ii},
        {"PSL(4) census: 4732 balanced ideals", census_psl4},
        {"oriented Grassmannian criterion, 3 <= n <= 8", grassmannian},
        {"oriented half-space example: 4 classes, 2 ideals", diamond},
        {"transversality types of iota_n and b_k", transversality_types},
        {"Bruhat factorization property suite", factorization},
        {"order-theoretic property suite", order_theory},
        {"triangle inequality and oriented sign rules", geometry},
        {"domain raster properties and reproducibility", domain_raster},
    };
    const double limits[] = {1, 1, 30, 1, 30, 5, 60, 60, 30, 120};
    int failed = 0, i = 0;
    for (const auto& [name, fn] : checks) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < limits[i];
        const bool pass = o.ok && in_time;
        failed += !pass;
        std::printf("%s %2d %s (%.2f s, limit %.0f s)%s%s\n", pass ? "PASS" : "FAIL", i + 1, name.c_str(), secs,
                    limits[i], o.detail.empty() ? "" : ": ", o.detail.c_str());
        ++i;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(checks.size()) - failed, checks.size());
    return failed ? 1 : 0;
}
