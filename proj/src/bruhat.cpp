#include "oriflag/bruhat.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "oriflag/errors.hpp"

namespace oriflag {

std::vector<SignedPermutation> generate_subgroup(const GroupContext& ctx, const std::vector<SignedPermutation>& gens) {
    ElementSet seen;
    std::vector<SignedPermutation> out;
    std::deque<SignedPermutation> queue;
    const SignedPermutation e = identity(ctx);
    seen.insert(e);
    out.push_back(e);
    queue.push_back(e);
    while (!queue.empty()) {
        const SignedPermutation x = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            SignedPermutation y = compose(x, g);
            if (seen.insert(y).second) {
                out.push_back(y);
                queue.push_back(std::move(y));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<int> normalized_theta(const GroupContext& ctx, std::vector<int> theta) {
    std::sort(theta.begin(), theta.end());
    theta.erase(std::unique(theta.begin(), theta.end()), theta.end());
    for (int i : theta)
        require(i >= 1 && i <= ctx.n - 1, ErrorCode::IndexOutOfRange, "theta index " + std::to_string(i));
    require(static_cast<int>(theta.size()) < ctx.n - 1, ErrorCode::NotProperSubset,
            "theta must be a proper subset of the simple roots");
    return theta;
}

std::vector<SignedPermutation> theta_generators(const GroupContext& ctx, const std::vector<int>& theta) {
    std::vector<SignedPermutation> gens;
    for (int i : theta) gens.push_back(generator(ctx, i));
    return gens;
}

}  // namespace

std::vector<SignedPermutation> mbar_theta(const GroupContext& ctx, const std::vector<int>& theta) {
    std::vector<SignedPermutation> out;
    for (const auto& w : generate_subgroup(ctx, theta_generators(ctx, theta)))
        if (in_mbar(w)) out.push_back(w);
    return out;
}

ParabolicType ParabolicType::make(const GroupContext& ctx, std::vector<int> theta, std::vector<SignedPermutation> E) {
    ParabolicType t;
    t.ctx_ = ctx;
    t.theta_ = normalized_theta(ctx, std::move(theta));
    require(!E.empty(), ErrorCode::NotSubgroup, "E is empty");
    for (const auto& m : E) {
        require(m.context() == ctx, ErrorCode::RankMismatch, "E element from another group");
        require(in_mbar(m), ErrorCode::NotInMbar, m.encode() + " is not in M-bar");
    }
    std::sort(E.begin(), E.end());
    E.erase(std::unique(E.begin(), E.end()), E.end());
    const ElementSet eset(E.begin(), E.end());
    for (const auto& a : E)
        for (const auto& b : E)
            require(eset.count(compose(a, b)) > 0, ErrorCode::NotSubgroup, "E is not closed under composition");
    for (const auto& m : mbar_theta(ctx, t.theta_))
        require(eset.count(m) > 0, ErrorCode::MissingMbarTheta, "E lacks " + m.encode() + " from M-bar_theta");
    t.E_ = std::move(E);
    std::vector<SignedPermutation> gens = theta_generators(ctx, t.theta_);
    gens.insert(gens.end(), t.E_.begin(), t.E_.end());
    t.elements_ = generate_subgroup(ctx, gens);
    t.members_ = ElementSet(t.elements_.begin(), t.elements_.end());
    return t;
}

ParabolicType ParabolicType::minimal(const GroupContext& ctx, std::vector<int> theta) {
    auto th = normalized_theta(ctx, std::move(theta));
    return make(ctx, th, mbar_theta(ctx, th));
}

std::vector<SignedPermutation> ParabolicType::generators() const {
    std::vector<SignedPermutation> gens = theta_generators(ctx_, theta_);
    for (const auto& m : E_)
        if (!m.is_identity()) gens.push_back(m);
    return gens;
}

ThetaE recover_theta_E(const GroupContext& ctx, const std::vector<SignedPermutation>& R) {
    require(!R.empty(), ErrorCode::NotParabolic, "empty set");
    ThetaE out;
    std::set<int> theta;
    for (const auto& w : R) {
        require(w.context() == ctx, ErrorCode::RankMismatch, "element from another group");
        if (in_mbar(w)) out.E.push_back(w);
        // pi(w) is a simple transposition (i, i+1)
        const auto p = underlying_permutation(w);
        int moved = 0, first = -1;
        for (int j = 0; j < ctx.n; ++j)
            if (p[j] != j) {
                if (first < 0) first = j;
                ++moved;
            }
        if (moved == 2 && p[first] == first + 1) theta.insert(first + 1);
    }
    out.theta.assign(theta.begin(), theta.end());
    std::sort(out.E.begin(), out.E.end());
    ParabolicType t;
    try {
        t = ParabolicType::make(ctx, out.theta, out.E);
    } catch (const Error& e) {
        fail(ErrorCode::NotParabolic, std::string("set is not of the form <v(theta)>E: ") + e.what());
    }
    std::vector<SignedPermutation> sorted = R;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    require(sorted == t.elements(), ErrorCode::NotParabolic, "set is not of the form <v(theta)>E");
    return out;
}

ElementSet lower_set(const SignedPermutation& w, DescentRule rule) {
    const GroupContext ctx = w.context();
    const ReducedWord rw = reduced_word(w, rule);
    ElementSet cur{rw.m};
    for (auto it = rw.letters.rbegin(); it != rw.letters.rend(); ++it) {
        const SignedPermutation g = generator(ctx, *it);
        const SignedPermutation g2 = compose(g, g);
        ElementSet next = cur;
        for (const auto& x : cur) {
            next.insert(compose(g, x));
            next.insert(compose(g2, x));
        }
        cur = std::move(next);
    }
    return cur;
}

bool leq_tilde(const SignedPermutation& a, const SignedPermutation& b) {
    if (length(a) > length(b)) return false;
    return lower_set(b).count(a) > 0;
}

PositionSpace::PositionSpace(const GroupContext& ctx, ParabolicType R, ParabolicType S, QuotientRoute route)
    : ctx_(ctx), R_(std::move(R)), S_(std::move(S)) {
    require(R_.context() == ctx && S_.context() == ctx, ErrorCode::RankMismatch, "types from another group");
    const std::vector<SignedPermutation> all = all_elements(ctx);
    std::unordered_map<SignedPermutation, int, SignedPermutationHash> orbit;
    orbit.reserve(all.size() * 2);
    const auto gl = R_.generators();
    const auto gr = S_.generators();
    std::vector<SignedPermutation> reps;
    for (const auto& w : all) {
        if (orbit.count(w)) continue;
        const int id = static_cast<int>(reps.size());
        reps.push_back(w);  // all is sorted, so w is the minimum of its orbit
        std::vector<SignedPermutation> stack{w};
        orbit.emplace(w, id);
        while (!stack.empty()) {
            const SignedPermutation x = stack.back();
            stack.pop_back();
            auto visit = [&](SignedPermutation y) {
                if (orbit.emplace(y, id).second) stack.push_back(std::move(y));
            };
            for (const auto& g : gl) visit(compose(g, x));
            for (const auto& g : gr) visit(compose(x, g));
        }
    }
    std::vector<int> order(reps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::vector<int> len(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) len[i] = length(reps[i]);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (len[a] != len[b]) return len[a] < len[b];
        return reps[a] < reps[b];
    });
    std::vector<int> relabel(reps.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        relabel[order[i]] = static_cast<int>(i);
        reps_.push_back(reps[order[i]]);
    }
    class_of_.reserve(orbit.size());
    for (auto& [w, id] : orbit) class_of_.emplace(w, relabel[id]);

    const int N = size();
    below_.assign(N, Bitset(N));
    above_.assign(N, Bitset(N));
    for (int c = 0; c < N; ++c) {
        if (route == QuotientRoute::UnionOverRepresentatives) {
            below_[c] = union_route_down_set(*this, c);
        } else {
            for (const auto& a : lower_set(reps_[c])) below_[c].set(class_of(a));
        }
    }
    for (int b = 0; b < N; ++b)
        for (int a = 0; a < N; ++a)
            if (below_[b][a]) above_[a].set(b);

    linear_extension_.resize(N);
    for (int c = 0; c < N; ++c) linear_extension_[c] = c;
    std::stable_sort(linear_extension_.begin(), linear_extension_.end(),
                     [&](int a, int b) { return below_[a].count() < below_[b].count(); });
}

int PositionSpace::class_of(const SignedPermutation& w) const {
    auto it = class_of_.find(w);
    require(it != class_of_.end(), ErrorCode::RankMismatch, "element " + w.encode() + " not in this group");
    return it->second;
}

std::vector<int> PositionSpace::class_members_count() const {
    std::vector<int> counts(size(), 0);
    for (const auto& [w, c] : class_of_) ++counts[c];
    return counts;
}

Bitset union_route_down_set(const PositionSpace& space, int c) {
    Bitset out(space.size());
    const SignedPermutation& w = space.representative(c);
    ElementSet done;
    for (const auto& r : space.R().elements()) {
        for (const auto& s : space.S().elements()) {
            SignedPermutation x = compose({r, w, s});
            if (!done.insert(x).second) continue;
            for (const auto& a : lower_set(x)) out.set(space.class_of(a));
        }
    }
    return out;
}

std::vector<std::pair<int, int>> covering_relations(const PositionSpace& space) {
    const int N = space.size();
    std::vector<std::pair<int, int>> edges;
    for (int b = 0; b < N; ++b) {
        Bitset strict = space.below(b);
        strict.reset(b);
        Bitset covered(N);
        for (auto c = strict.find_first(); c != Bitset::npos; c = strict.find_next(c)) {
            Bitset sc = space.below(static_cast<int>(c));
            sc.reset(c);
            covered |= sc;
        }
        Bitset cov = strict - covered;
        for (auto a = cov.find_first(); a != Bitset::npos; a = cov.find_next(a))
            edges.emplace_back(static_cast<int>(a), b);
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

std::vector<SignedPermutation> conjugate_generator_set(const GroupContext& ctx) {
    ElementSet q;
    for (const auto& w : all_elements(ctx)) {
        const SignedPermutation wi = inverse(w);
        for (int i = 1; i < ctx.n; ++i) {
            const SignedPermutation g = generator(ctx, i);
            q.insert(compose({w, g, wi}));
            q.insert(compose({w, inverse(g), wi}));
        }
    }
    std::vector<SignedPermutation> out(q.begin(), q.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool folding_check(const SignedPermutation& a, const SignedPermutation& b, const ElementSet& Q) {
    require(length(b) == length(a) + 1, ErrorCode::LengthMismatch, "folding_check needs length(b) = length(a) + 1");
    return Q.count(compose(a, inverse(b))) > 0;
}

bool folding_check(const SignedPermutation& a, const SignedPermutation& b) {
    require(length(b) == length(a) + 1, ErrorCode::LengthMismatch, "folding_check needs length(b) = length(a) + 1");
    const auto q = conjugate_generator_set(a.context());
    return folding_check(a, b, ElementSet(q.begin(), q.end()));
}

InvolutionAction::InvolutionAction(const PositionSpace& space, const SignedPermutation& w0)
    : space_(&space), w0_(w0) {
    const GroupContext& ctx = space.context();
    require(w0.context() == ctx, ErrorCode::RankMismatch, "w0 from another group");
    require(is_transverse(w0), ErrorCode::W0NotTransverse, w0.encode() + " is not transverse");
    const auto& E = space.R().E();
    const ElementSet eset(E.begin(), E.end());
    const SignedPermutation wi = inverse(w0);
    for (const auto& m : E)
        require(eset.count(compose({w0, m, wi})) > 0, ErrorCode::W0NotNormalizing,
                "w0 does not normalize E of the left type");
    require(eset.count(compose(w0, w0)) > 0, ErrorCode::W0SquareNotInE,
            "w0^2 = " + compose(w0, w0).encode() + " is not in E of the left type");
    const auto& theta = space.R().theta();
    for (int i : theta)
        require(std::binary_search(theta.begin(), theta.end(), opposition(ctx, i)),
                ErrorCode::NotOppositionInvariant, "theta of the left type is not opposition invariant");

    const int N = space.size();
    map_.resize(N);
    for (int c = 0; c < N; ++c) map_[c] = space.class_of(compose(w0, space.representative(c)));
    for (int c = 0; c < N; ++c)
        require(map_[map_[c]] == c, ErrorCode::VerificationMismatch, "w0 action is not an involution");
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            if (space.leq(a, b))
                require(space.leq(map_[b], map_[a]), ErrorCode::VerificationMismatch, "w0 action does not reverse order");
}

bool InvolutionAction::has_fixed_point() const {
    for (std::size_t c = 0; c < map_.size(); ++c)
        if (map_[c] == static_cast<int>(c)) return true;
    return false;
}

SphereExample sphere_example(int n) {
    require(n >= 3 && n % 2 == 1, ErrorCode::InvalidArgument, "sphere example needs odd n >= 3");
    const GroupContext ctx(n);
    const int m = (n - 1) / 2;
    std::vector<int> theta, eta;
    for (int i = 1; i < n; ++i) {
        if (i != m && i != m + 1) theta.push_back(i);
        if (i != 1) eta.push_back(i);
    }
    std::vector<SignedPermutation> E;
    for (const auto& x : mbar_elements(ctx))
        if (x.sign(m) == 1) E.push_back(x);
    std::vector<int> signs(n, 1);
    signs[m] = -1;
    if ((n * (n - 1) / 2) % 2 == 0) signs[n - 1] = -1;
    return {ctx, ParabolicType::make(ctx, theta, E), ParabolicType::minimal(ctx, eta), antidiag(ctx, signs)};
}

std::string hasse_dot(const PositionSpace& space, const InvolutionAction* action) {
    std::ostringstream out;
    out << "digraph positions {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
    int r = -1;
    for (int c = 0; c < space.size(); ++c) {
        if (space.rank_of(c) != r) {
            if (r >= 0) out << "  }\n";
            r = space.rank_of(c);
            out << "  { rank=same; // length " << r << "\n";
        }
        out << "    c" << c << " [label=\"" << space.representative(c).encode() << "\"];\n";
    }
    if (r >= 0) out << "  }\n";
    for (auto [a, b] : covering_relations(space)) out << "  c" << a << " -> c" << b << ";\n";
    if (action) {
        for (int c = 0; c < space.size(); ++c) {
            const int d = (*action)(c);
            if (c < d)
                out << "  c" << c << " -> c" << d << " [style=dashed, color=red, dir=both, constraint=false];\n";
        }
    }
    out << "}\n";
    return out.str();
}

nlohmann::json type_json(const ParabolicType& t) {
    nlohmann::json E = nlohmann::json::array();
    for (const auto& m : t.E()) E.push_back(m.encode());
    return {{"theta", t.theta()}, {"E", E}};
}

nlohmann::json space_json(const PositionSpace& space) {
    nlohmann::json classes = nlohmann::json::array();
    nlohmann::json leq = nlohmann::json::array();
    for (int a = 0; a < space.size(); ++a) {
        classes.push_back(space.representative(a).encode());
        std::vector<bool> row(space.size());
        for (int b = 0; b < space.size(); ++b) row[b] = space.leq(a, b);
        leq.push_back(row);
    }
    return {{"n", space.context().n},
            {"projective", space.context().projective},
            {"R", type_json(space.R())},
            {"S", type_json(space.S())},
            {"classes", classes},
            {"leq", leq}};
}

}  // namespace oriflag
