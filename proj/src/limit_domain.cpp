#include "oriflag/limit_domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "oriflag/errors.hpp"
#include "oriflag/representations.hpp"

namespace oriflag {

namespace {

Matrix matrix_from_json(const nlohmann::json& j) {
    const auto& rows = j.is_object() ? j.at("rows") : j;
    require(rows.is_array() && !rows.empty(), ErrorCode::ParseError, "matrix must be a non-empty array of rows");
    const auto r = rows.size(), c = rows[0].size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        require(rows[i].is_array() && rows[i].size() == c, ErrorCode::ParseError, "ragged matrix rows");
        for (std::size_t k = 0; k < c; ++k) m(i, k) = rows[i][k].get<double>();
    }
    return m;
}

int block_k(const std::string& via) {
    try {
        return std::stoi(via.substr(6));
    } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "bad block spec: " + via);
    }
}

}  // namespace

std::vector<Matrix> MatrixGroupSpec::images(double eps) const {
    std::vector<Matrix> out;
    for (const auto& g : generators) {
        if (via == "direct") {
            require(g.rows() == n && g.cols() == n, ErrorCode::RankMismatch, "generator size differs from n");
            require(std::abs(g.determinant() - 1) < 1e-6 * std::max(1.0, g.norm()), ErrorCode::InvalidArgument,
                    "generator must have determinant 1");
            out.push_back(g);
        } else if (via == "irreducible") {
            out.push_back(irreducible_rep(n, g, eps));
        } else if (via.rfind("block:", 0) == 0) {
            out.push_back(block_embedding(n, block_k(via), g, eps));
        } else {
            fail(ErrorCode::ParseError, "unknown via: " + via);
        }
    }
    return out;
}

MatrixGroupSpec parse_group_spec(const nlohmann::json& j) {
    MatrixGroupSpec s;
    try {
        s.n = j.at("n").get<int>();
        s.via = j.value("via", std::string("direct"));
        for (const auto& g : j.at("generators")) s.generators.push_back(matrix_from_json(g));
        s.rank = j.value("rank", static_cast<int>(s.generators.size()));
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("group spec: ") + e.what());
    }
    require(s.rank == static_cast<int>(s.generators.size()) && s.rank >= 1, ErrorCode::ParseError,
            "rank must equal the number of generators");
    require(s.n >= 2, ErrorCode::ParseError, "n must be at least 2");
    return s;
}

MatrixGroupSpec load_group_spec(const std::string& path) {
    std::ifstream in(path);
    require(bool(in), ErrorCode::ParseError, "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, path + ": " + e.what());
    }
    return parse_group_spec(j);
}

nlohmann::json group_spec_json(const MatrixGroupSpec& spec) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : spec.generators) {
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (Eigen::Index k = 0; k < g.cols(); ++k) row.push_back(g(i, k));
            rows.push_back(row);
        }
        gens.push_back(rows);
    }
    return {{"n", spec.n}, {"rank", spec.rank}, {"via", spec.via}, {"generators", gens}};
}

std::vector<Word> reduced_words(int rank, int L) {
    require(rank >= 1, ErrorCode::InvalidArgument, "rank must be positive");
    require(L >= 1, ErrorCode::InvalidArgument, "L must be positive");
    std::vector<int> letters;
    for (int g = 1; g <= rank; ++g) {
        letters.push_back(g);
        letters.push_back(-g);
    }
    std::vector<Word> out, layer{{}};
    for (int l = 1; l <= L; ++l) {
        std::vector<Word> next;
        for (const auto& w : layer)
            for (int x : letters) {
                if (!w.empty() && w.back() == -x) continue;
                Word v = w;
                v.push_back(x);
                next.push_back(std::move(v));
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

bool cyclically_reduced(const Word& w) { return w.size() <= 1 || w.front() != -w.back(); }

std::string word_string(const Word& w) {
    std::string s;
    for (int x : w) {
        s += static_cast<char>('a' + std::abs(x) - 1);
        if (x < 0) s += "^-1";
    }
    return s.empty() ? "1" : s;
}

Matrix evaluate_word(const std::vector<Matrix>& gens, const std::vector<Matrix>& inverses, const Word& w) {
    require(!gens.empty(), ErrorCode::InvalidArgument, "no generators");
    Matrix m = Matrix::Identity(gens[0].rows(), gens[0].cols());
    for (int x : w) {
        const int g = std::abs(x) - 1;
        require(g < static_cast<int>(gens.size()), ErrorCode::IndexOutOfRange, "letter out of range");
        m = m * (x > 0 ? gens[g] : inverses[g]);
    }
    return m;
}

Matrix default_base(int n) {
    const double t = 0.5;
    Matrix r(2, 2);
    r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return irreducible_rep(n, r);
}

namespace {

// Q <- orthonormal factor of M Q with positive diagonal; adds log|R_ii| to logdiag.
void qr_step(const Matrix& M, Matrix& Q, Vector& logdiag) {
    Eigen::HouseholderQR<Matrix> qr(M * Q);
    Q = qr.householderQ();
    const Matrix& r = qr.matrixQR();
    for (Eigen::Index i = 0; i < Q.cols(); ++i) {
        require(std::isfinite(r(i, i)) && r(i, i) != 0, ErrorCode::NotProximal, "power iteration collapsed");
        if (r(i, i) < 0) Q.col(i) *= -1;
        logdiag(i) += std::log(std::abs(r(i, i)));
    }
}

}  // namespace

OrientedFlag attracting_flag(const std::vector<Matrix>& factors, const AttractingOptions& opts) {
    require(!factors.empty(), ErrorCode::InvalidArgument, "no factors");
    const Eigen::Index n = factors[0].rows();
    for (const auto& f : factors)
        require(f.rows() == n && f.cols() == n && n >= 2, ErrorCode::RankMismatch, "expected square factors");
    Matrix Q = OrientedFlag::canonicalize(opts.base ? *opts.base : default_base(static_cast<int>(n))).rotation();
    Vector logdiag(n);
    bool converged = false;
    for (int it = 0; it < opts.iters && !converged; ++it) {
        // two passes of g: negative eigenvalues flip column signs once per pass
        const Matrix before = Q;
        logdiag.setZero();
        for (int pass = 0; pass < 2; ++pass)
            for (auto f = factors.rbegin(); f != factors.rend(); ++f) qr_step(*f, Q, logdiag);
        converged = (Q - before).cwiseAbs().maxCoeff() < opts.tol;
    }
    require(converged, ErrorCode::NotProximal, "power iteration did not converge");
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        require(logdiag(i) > logdiag(i + 1) + 1e-9, ErrorCode::NotProximal,
                "eigenvalue moduli are not strictly decreasing along the limit flag");
    return OrientedFlag::canonicalize(Q, 1e-300);
}

OrientedFlag attracting_flag(const Matrix& g, const AttractingOptions& opts) {
    require(g.rows() == g.cols() && g.rows() >= 2, ErrorCode::RankMismatch, "expected a square matrix");
    return attracting_flag(std::vector<Matrix>{g}, opts);
}

LimitSet sample_limit_set(const MatrixGroupSpec& spec, int L, const SampleOptions& opts) {
    const auto gens = spec.images();
    std::vector<Matrix> inverses;
    for (const auto& g : gens) inverses.push_back(g.inverse());
    LimitSet out;
    for (const auto& w : reduced_words(spec.rank, L)) {
        if (!opts.all_reduced_words && !cyclically_reduced(w)) continue;
        try {
            std::vector<Matrix> factors;
            for (int x : w) factors.push_back(x > 0 ? gens[std::abs(x) - 1] : inverses[std::abs(x) - 1]);
            auto f = attracting_flag(factors, opts.attracting);
            if (opts.twist) f = f.right_twisted(*opts.twist);
            out.samples.push_back({w, std::move(f)});
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotProximal) throw;
            ++out.skipped;
        }
    }
    return out;
}

void require_line_space(const PositionSpace& space) {
    const auto& ctx = space.context();
    require(!ctx.projective, ErrorCode::UnsupportedSpace, "oriented lines need a non-projective group");
    const auto& S = space.S();
    bool ok = true;
    for (int i = 2; i < ctx.n && ok; ++i) ok = S.contains(generator(ctx, i));
    for (int j = 2; j < ctx.n && ok; ++j) {
        std::vector<int> s(ctx.n, 1);
        s[1] = s[j] = -1;
        ok = S.contains(diag(ctx, s));
    }
    require(ok, ErrorCode::UnsupportedSpace, "positions must depend only on the oriented line");
}

RemovedSet::RemovedSet(const Ideal& ideal, std::vector<OrientedFlag> flags, double tol)
    : n_(ideal.space().context().n), tol_(tol) {
    const auto& space = ideal.space();
    require_line_space(space);
    // (row, sign) -> class of any element with that first column
    table_.assign(2 * n_, -1);
    for (int c = 0; c < space.size(); ++c) {
        const auto& rep = space.representative(c);
        for (const auto& r : space.R().elements()) {
            const auto w = r * rep;
            table_[2 * w.row(0) + (w.sign(0) > 0 ? 0 : 1)] = c;
        }
    }
    for (int x : table_) require(x >= 0, ErrorCode::UnsupportedSpace, "incomplete line table");
    in_ideal_.resize(table_.size());
    for (std::size_t i = 0; i < table_.size(); ++i) in_ideal_[i] = ideal.contains(table_[i]);
    rows_.reserve(flags.size() * n_ * n_);
    for (const auto& f : flags) {
        require(f.rank() == n_, ErrorCode::RankMismatch, "flag size differs from the space");
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) rows_.push_back(f.rotation()(j, i));
    }
}

int RemovedSet::position(const OrientedFlag& f, const Vector& p) const {
    require(p.size() == n_ && f.rank() == n_, ErrorCode::RankMismatch, "size mismatch");
    const Vector v = f.rotation().transpose() * p;
    const double cut = tol_ * p.norm();
    for (int i = n_ - 1; i >= 0; --i)
        if (std::abs(v(i)) > cut) return table_[2 * i + (v(i) > 0 ? 0 : 1)];
    fail(ErrorCode::DegenerateInput, "zero vector");
}

bool RemovedSet::contains(const Vector& p) const {
    require(p.size() == n_, ErrorCode::RankMismatch, "size mismatch");
    const double cut = tol_ * p.norm();
    require(cut > 0 || p.norm() > 0, ErrorCode::DegenerateInput, "zero vector");
    const std::size_t count = flag_count();
    const double* pp = p.data();
    for (std::size_t k = 0; k < count; ++k) {
        const double* rows = rows_.data() + k * n_ * n_;
        for (int i = n_ - 1; i >= 0; --i) {
            const double* row = rows + i * n_;
            double v = 0;
            for (int j = 0; j < n_; ++j) v += row[j] * pp[j];
            if (std::abs(v) > cut) {
                if (in_ideal_[2 * i + (v > 0 ? 0 : 1)]) return true;
                break;
            }
            // all components zero only for p = 0; the lowest ones snap to the smaller cell
        }
    }
    return false;
}

bool k_membership(const OrientedSubspace& p, const std::vector<LimitSample>& samples, const Ideal& ideal, double tol) {
    require(p.dim() == 1, ErrorCode::InvalidArgument, "expected an oriented line");
    std::vector<OrientedFlag> flags;
    for (const auto& s : samples) flags.push_back(s.flag);
    return RemovedSet(ideal, std::move(flags), tol).contains(p.basis().col(0));
}

Ideal positive_half_ideal(const PositionSpace& space) {
    const auto& ctx = space.context();
    require(ctx.n % 2 == 1 && ctx.n >= 3, ErrorCode::UnsupportedSpace, "needs odd n");
    const int m = (ctx.n - 1) / 2;
    // v(alpha_m) ... v(alpha_1) sends e1 to +e_(m+1)
    SignedPermutation w = identity(ctx);
    for (int i = 1; i <= m; ++i) w = generator(ctx, i) * w;
    return Ideal::generated_by(space, {space.class_of(w)});
}

std::string RasterImage::ppm() const {
    std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(pixels.data()), pixels.size());
    return out;
}

void RasterImage::write_ppm(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    require(bool(f), ErrorCode::InvalidArgument, "cannot write " + path);
    const auto s = ppm();
    f.write(s.data(), static_cast<std::streamsize>(s.size()));
}

Matrix light_cone_frame() {
    const double r = std::sqrt(0.5);
    Matrix m(3, 3);
    m << r, 0, r,  //
        0, 1, 0,   //
        -r, 0, r;
    return m;
}

RasterImage render_sphere(const Ideal& ideal, const std::vector<OrientedFlag>& flags, const RenderOptions& opts) {
    require(ideal.space().context().n == 3, ErrorCode::UnsupportedSpace, "sphere rendering needs n = 3");
    require(opts.width > 0 && opts.height > 0, ErrorCode::InvalidArgument, "image size must be positive");
    const Matrix frame = opts.frame ? *opts.frame : Matrix(Matrix::Identity(3, 3));
    require(frame.rows() == 3 && frame.cols() == 3, ErrorCode::RankMismatch, "frame must be 3x3");
    const double pi = std::numbers::pi;
    const double tol = opts.tol > 0 ? opts.tol : 0.75 * pi / opts.height;
    const RemovedSet K(ideal, flags, tol);

    RasterImage img;
    img.width = opts.width;
    img.height = opts.height;
    img.pixels.assign(3 * static_cast<std::size_t>(opts.width) * opts.height, 0);
    auto shade = [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            const double lat = pi / 2 - pi * (y + 0.5) / opts.height;
            for (int x = 0; x < opts.width; ++x) {
                const double lon = 2 * pi * (x + 0.5) / opts.width - pi;
                const Vector local = Eigen::Vector3d(std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon),
                                                     std::sin(lat));
                const bool dark = K.contains(frame * local);
                auto* px = img.pixels.data() + 3 * (static_cast<std::size_t>(y) * opts.width + x);
                px[0] = dark ? 30 : 240;
                px[1] = dark ? 30 : 240;
                px[2] = dark ? 60 : 235;
            }
        }
    };
    const int jobs = std::clamp(opts.jobs, 1, opts.height);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back(shade, opts.height * t / jobs, opts.height * (t + 1) / jobs);
    for (auto& th : pool) th.join();
    return img;
}

}  // namespace oriflag
