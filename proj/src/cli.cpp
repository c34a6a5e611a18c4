#include "oriflag/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "oriflag/bruhat.hpp"
#include "oriflag/errors.hpp"
#include "oriflag/flags.hpp"
#include "oriflag/ideals.hpp"
#include "oriflag/limit_domain.hpp"
#include "oriflag/matrix_io.hpp"
#include "oriflag/representations.hpp"

namespace oriflag::cli {

namespace {

constexpr int kUsage = 2;
constexpr int kMismatch = 3;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorCode::ParseError, "bad " + what + ": '" + s + "'");
}

int sign_of(const std::string& s) {
    if (s == "+" || s == "+1" || s == "1") return 1;
    if (s == "-" || s == "-1") return -1;
    fail(ErrorCode::ParseError, "bad sign '" + s + "'");
}

double env_eps() {
    if (const char* e = std::getenv("ORIFLAG_EPS")) {
        try {
            const double v = std::stod(e);
            require(v > 0, ErrorCode::ParseError, "");
            return v;
        } catch (const std::exception&) {
            fail(ErrorCode::ParseError, std::string("ORIFLAG_EPS is not a positive number: ") + e);
        }
    }
    return kDefaultEps;
}

// Options shared by the subcommands that build a position space.
struct SpaceArgs {
    int n = 3;
    bool projective = false;
    std::string R = "trivial", S = "trivial", w0, preset;
    bool force = false;

    void add(CLI::App* app, bool need_w0) {
        app->add_option("--n", n, "matrix size")->required();
        app->add_flag("--projective", projective, "work in PSL(n) (even n)");
        app->add_option("--R", R, "left type: trivial | theta=1,2;E=min|all|w0sq|<signs>,...");
        app->add_option("--S", S, "right type, same syntax as --R");
        auto* w = app->add_option("--w0", w0, "antidiag:+,-,+ (top row first) | hitchin | wk:<k> | sphere");
        if (need_w0) w->required();
        app->add_option("--preset", preset, "sphere: R, S and w0 of the oriented half-space example");
        app->add_flag("--force", force, "allow large spaces (n >= 5 with trivial types, or n > 7)");
    }

    GroupContext ctx() const { return GroupContext(n, projective); }
};

SignedPermutation parse_w0(const std::string& s, const GroupContext& ctx) {
    if (s == "hitchin") {
        const auto w = hitchin_w0(ctx.n);
        require(w.projective() == ctx.projective, ErrorCode::ParseError,
                ctx.n % 2 ? "hitchin w0 for odd n lives in SL(n)" : "hitchin w0 for even n needs --projective");
        return w;
    }
    if (s == "sphere") return sphere_example(ctx.n).w0;
    if (s.rfind("wk:", 0) == 0) {
        require(!ctx.projective, ErrorCode::ParseError, "wk needs odd n");
        return block_transversality(ctx.n, parse_int(s.substr(3), "k"));
    }
    if (s.rfind("antidiag:", 0) == 0) {
        std::vector<int> signs;
        for (const auto& t : split(s.substr(9), ',')) signs.push_back(sign_of(trim(t)));
        require(static_cast<int>(signs.size()) == ctx.n, ErrorCode::ParseError, "antidiag needs n signs");
        return antidiag(ctx, signs);
    }
    if (s.rfind("images:", 0) == 0) {
        std::string t = s.substr(7);
        for (auto& c : t)
            if (c == ',') c = ' ';
        return SignedPermutation::decode(ctx, t);
    }
    fail(ErrorCode::ParseError, "unknown w0 '" + s + "'");
}

ParabolicType parse_type(const std::string& s, const GroupContext& ctx, const std::optional<SignedPermutation>& w0) {
    if (s.empty() || s == "trivial") return ParabolicType::trivial(ctx);
    std::vector<int> theta;
    std::string e = "min";
    for (const auto& part : split(s, ';')) {
        const auto eq = part.find('=');
        require(eq != std::string::npos, ErrorCode::ParseError, "expected key=value in '" + part + "'");
        const auto key = trim(part.substr(0, eq)), val = trim(part.substr(eq + 1));
        if (key == "theta") {
            for (const auto& t : split(val, ','))
                if (!trim(t).empty()) theta.push_back(parse_int(trim(t), "theta index"));
        } else if (key == "E") {
            e = val;
        } else {
            fail(ErrorCode::ParseError, "unknown type key '" + key + "'");
        }
    }
    std::vector<SignedPermutation> gens = mbar_theta(ctx, theta);
    if (e == "all") {
        gens = mbar_elements(ctx);
    } else if (e == "w0sq") {
        require(w0.has_value(), ErrorCode::ParseError, "E=w0sq needs --w0");
        gens.push_back(*w0 * *w0);
    } else if (e != "min") {
        for (const auto& t : split(e, ',')) {
            const auto str = trim(t);
            require(static_cast<int>(str.size()) == ctx.n, ErrorCode::ParseError, "E element needs n signs: " + str);
            std::vector<int> signs;
            for (char c : str) signs.push_back(sign_of(std::string(1, c)));
            gens.push_back(diag(ctx, signs));
        }
    }
    return ParabolicType::make(ctx, theta, generate_subgroup(ctx, gens));
}

struct Built {
    std::optional<SignedPermutation> w0;
    std::unique_ptr<PositionSpace> space;
};

Built build_space(const SpaceArgs& a, QuotientRoute route = QuotientRoute::LeftForm) {
    const auto ctx = a.ctx();
    Built b;
    if (a.preset == "sphere") {
        auto ex = sphere_example(a.n);
        b.w0 = a.w0.empty() ? ex.w0 : parse_w0(a.w0, ctx);
        b.space = std::make_unique<PositionSpace>(ctx, ex.R, ex.S, route);
        return b;
    }
    require(a.preset.empty(), ErrorCode::ParseError, "unknown preset '" + a.preset + "'");
    if (!a.w0.empty()) b.w0 = parse_w0(a.w0, ctx);
    auto R = parse_type(a.R, ctx, b.w0);
    auto S = parse_type(a.S, ctx, b.w0);
    const bool trivial = R.size() <= 2 && S.size() <= 2;
    require(a.force || (a.n <= 7 && !(a.n >= 5 && trivial)), ErrorCode::TooLarge,
            "space too large for n = " + std::to_string(a.n) + "; pass --force");
    b.space = std::make_unique<PositionSpace>(ctx, std::move(R), std::move(S), route);
    return b;
}

std::string class_label(const PositionSpace& space, int c) {
    const auto& rep = space.representative(c);
    return rep.is_identity() ? "identity" : rep.encode();
}

struct Outputs {
    std::ostream& out;
    std::ostream& err;
};

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    require(bool(f), ErrorCode::InvalidArgument, "cannot write " + path);
    f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Oriented relative positions, balanced ideals and domains of discontinuity", "oriflag"};
    app.require_subcommand(1);
    // global options may appear after the subcommand too
    app.fallthrough();
    std::uint64_t seed = 1;
    int jobs = 1;
    bool verify = false;
    app.add_option("--seed", seed, "seed for randomized checks");
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
    app.add_flag("--verify", verify, "re-check closed-form results against brute force");

    // weyl order
    auto* weyl = app.add_subcommand("weyl", "extended Weyl group utilities");
    weyl->require_subcommand(1);
    auto* order = weyl->add_subcommand("order", "Hasse diagram of the relative positions");
    SpaceArgs order_args;
    order_args.add(order, false);
    std::string order_format = "dot", order_out;
    order->add_option("--format", order_format, "dot | json")->check(CLI::IsMember({"dot", "json"}));
    order->add_option("--out", order_out, "output file (default stdout)");

    auto* positions = app.add_subcommand("positions", "list the classes of R\\W/S");
    SpaceArgs pos_args;
    pos_args.add(positions, false);
    std::string route = "left";
    bool pos_json = false;
    positions->add_option("--route", route, "left | union")->check(CLI::IsMember({"left", "union"}));
    positions->add_flag("--json", pos_json, "print JSON");

    auto* ideals = app.add_subcommand("ideals", "enumerate w0-balanced ideals");
    SpaceArgs ideal_args;
    ideal_args.add(ideals, false);
    std::string ideals_json;
    bool list = false;
    ideals->add_option("--json", ideals_json, "write the census as JSON to this file");
    ideals->add_flag("--list", list, "print every ideal");

    auto* grass = app.add_subcommand("grassmannian", "balanced ideals for oriented Grassmannians");
    int grass_n = 0;
    grass->add_option("--n", grass_n, "matrix size")->required()->check(CLI::Range(3, 100));

    auto* relpos = app.add_subcommand("relpos", "relative position of two flags given by matrices");
    SpaceArgs rel_args;
    rel_args.add(relpos, false);
    std::string file_a, file_b;
    relpos->add_option("a", file_a, "first matrix file")->required();
    relpos->add_option("b", file_b, "second matrix file")->required();

    auto* wk = app.add_subcommand("wk", "transversality type of b_k (k = 0 for Hitchin)");
    int wk_n = 0, wk_k = 0;
    wk->add_option("--n", wk_n, "odd matrix size")->required();
    wk->add_option("--k", wk_k, "block size")->required();

    auto* domain = app.add_subcommand("domain", "domains of discontinuity in oriented lines");
    domain->require_subcommand(1);
    auto* render = domain->add_subcommand("render", "render the removed set on S^2 as PPM");
    std::string group_file, ppm_out, frame = "identity", which = "positive", twist;
    int L = 6, width = 400, height = 200;
    double tol = 0;
    render->add_option("--group", group_file, "group spec JSON")->required();
    render->add_option("--L", L, "maximal word length")->check(CLI::Range(1, 20));
    render->add_option("--width", width, "image width")->check(CLI::Range(1, 20000));
    render->add_option("--height", height, "image height")->check(CLI::Range(1, 20000));
    render->add_option("--out", ppm_out, "output PPM file")->required();
    render->add_option("--frame", frame, "identity | lightcone")->check(CLI::IsMember({"identity", "lightcone"}));
    render->add_option("--ideal", which, "positive | negative half")->check(CLI::IsMember({"positive", "negative"}));
    render->add_option("--twist", twist, "M-bar signs applied to every sample, e.g. +--");
    render->add_option("--tol", tol, "membership tolerance (default about one pixel)");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << e.what() << "\n";
            return 0;
        }
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kUsage;
    }

    try {
        const double eps = env_eps();
        if (*order) {
            auto b = build_space(order_args);
            if (order_format == "json") {
                write_text(order_out, space_json(*b.space).dump(2) + "\n", out);
            } else {
                std::optional<InvolutionAction> act;
                if (b.w0) act.emplace(*b.space, *b.w0);
                write_text(order_out, hasse_dot(*b.space, act ? &*act : nullptr), out);
            }
            return 0;
        }
        if (*positions) {
            auto b = build_space(pos_args, route == "union" ? QuotientRoute::UnionOverRepresentatives
                                                           : QuotientRoute::LeftForm);
            const auto& sp = *b.space;
            if (pos_json) {
                out << space_json(sp).dump(2) << "\n";
                return 0;
            }
            const auto sizes = sp.class_members_count();
            out << "classes=" << sp.size() << "\n";
            for (int c = 0; c < sp.size(); ++c)
                out << c << ": " << sp.representative(c).encode() << "  length=" << sp.rank_of(c)
                    << "  size=" << sizes[c] << "  below=" << sp.below(c).count() << "\n";
            if (verify) {
                for (int c = 0; c < sp.size(); ++c)
                    if (union_route_down_set(sp, c) != sp.below(c)) {
                        err << "verification failed: class " << c << " order differs between routes\n";
                        return kMismatch;
                    }
                out << "verify: order routes agree\n";
            }
            return 0;
        }
        if (*ideals) {
            auto b = build_space(ideal_args);
            require(b.w0.has_value(), ErrorCode::ParseError, "ideals needs --w0 (or --preset)");
            const InvolutionAction action(*b.space, *b.w0);
            EnumerateOptions opts;
            opts.jobs = jobs;
            const auto census = enumerate_balanced(action, opts);
            out << "count=" << census.count() << " classes=" << census.mbar_classes.size() << "\n";
            if (list)
                for (const auto& I : census.ideals) {
                    out << "{";
                    bool first = true;
                    for (const auto& e : I.encodings()) {
                        out << (first ? "" : ", ") << "[" << e << "]";
                        first = false;
                    }
                    out << "}\n";
                }
            if (!ideals_json.empty()) write_text(ideals_json, census_json(census).dump(2) + "\n", out);
            if (verify) {
                for (const auto& I : census.ideals)
                    if (!is_balanced(I, action) || !is_down_closed(*b.space, I.members())) {
                        err << "verification failed: non-balanced ideal in census\n";
                        return kMismatch;
                    }
                out << "verify: every listed ideal is balanced\n";
            }
            return 0;
        }
        if (*grass) {
            bool agree = true;
            for (int k = 1; k < grass_n; ++k) {
                const bool e = grassmannian_exists(grass_n, k);
                out << "k=" << k << ": " << (e ? "exists" : "no") << "\n";
                if (grass_n <= 12 || verify) agree &= e == grassmannian_fixed_point_oracle(grass_n, k);
            }
            out << "oracle: " << (agree ? "agrees" : "MISMATCH") << "\n";
            return agree ? 0 : kMismatch;
        }
        if (*relpos) {
            auto b = build_space(rel_args);
            const Matrix A = read_matrix_file(file_a), B = read_matrix_file(file_b);
            require(A.rows() == rel_args.n && B.rows() == rel_args.n, ErrorCode::RankMismatch,
                    "matrix size differs from --n");
            const auto F1 = OrientedFlag::canonicalize(A, eps), F2 = OrientedFlag::canonicalize(B, eps);
            const int c = relative_position(F1, F2, *b.space, eps);
            out << class_label(*b.space, c) << "\n";
            if (verify) {
                std::mt19937_64 rng(seed);
                std::normal_distribution<double> nd;
                for (int t = 0; t < 20; ++t) {
                    Matrix g(rel_args.n, rel_args.n);
                    for (int i = 0; i < g.rows(); ++i)
                        for (int j = 0; j < g.cols(); ++j) g(i, j) = nd(rng);
                    if (g.determinant() < 0) g.col(0) *= -1;
                    if (relative_position(F1.translated(g, eps), F2.translated(g, eps), *b.space, eps) != c) {
                        err << "verification failed: position changed under a random translation\n";
                        return kMismatch;
                    }
                }
                out << "verify: invariant under 20 random translations\n";
            }
            return 0;
        }
        if (*wk) {
            const auto r = analyze_block_transversality(wk_n, wk_k);
            out << "computed:\n" << format_matrix(r.computed.matrix()) << "formula:\n" << format_matrix(r.formula.matrix());
            out << "canonical computed: " << r.computed_canonical.encode() << "\n";
            out << "canonical formula:  " << r.formula_canonical.encode() << "\n";
            out << (r.matches() ? "match" : "MISMATCH") << "\n";
            return r.matches() ? 0 : kMismatch;
        }
        if (*render) {
            const auto spec = load_group_spec(group_file);
            require(spec.n == 3, ErrorCode::UnsupportedSpace, "rendering needs n = 3");
            const auto ex = sphere_example(3);
            const PositionSpace space(ex.ctx, ex.R, ex.S);
            const auto pos = positive_half_ideal(space);
            std::optional<Ideal> chosen;
            if (which == "positive") {
                chosen = pos;
            } else {
                const auto census = enumerate_balanced(InvolutionAction(space, ex.w0));
                for (const auto& I : census.ideals)
                    if (!(I == pos)) chosen = I;
            }
            SampleOptions sopts;
            if (!twist.empty()) {
                std::vector<int> signs;
                for (char c : twist) signs.push_back(sign_of(std::string(1, c)));
                require(signs.size() == 3u, ErrorCode::ParseError, "twist needs 3 signs");
                sopts.twist = diag(ex.ctx, signs);
            }
            const auto samples = sample_limit_set(spec, L, sopts);
            std::vector<OrientedFlag> flags;
            for (const auto& s : samples.samples) flags.push_back(s.flag);
            RenderOptions ropts;
            ropts.width = width;
            ropts.height = height;
            ropts.jobs = jobs;
            ropts.tol = tol;
            if (frame == "lightcone") ropts.frame = light_cone_frame();
            const auto img = render_sphere(*chosen, flags, ropts);
            img.write_ppm(ppm_out);
            std::size_t dark = 0;
            for (std::size_t i = 0; i < img.pixels.size(); i += 3) dark += img.pixels[i] < 128;
            out << "samples=" << samples.samples.size() << " skipped=" << samples.skipped << " dark=" << dark
                << " size=" << width << "x" << height << "\n";
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::VerificationMismatch:
                return kMismatch;
            case ErrorCode::ParseError:
            case ErrorCode::TooLarge:
            case ErrorCode::InvalidArgument:
            case ErrorCode::IndexOutOfRange:
            case ErrorCode::RankMismatch:
                return kUsage;
            default:
                return 1;
        }
    }
    return 0;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace oriflag::cli
