// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. Oracles here are closed forms and direct complex sums, computed
// independently of the library code under test.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "rz/charfn.hpp"
#include "rz/enclose.hpp"
#include "rz/miranda.hpp"
#include "rz/winding.hpp"

using namespace rz;

namespace {

constexpr double pi = std::numbers::pi;

// Pinned tolerances and limits.
constexpr double kPointTol = 1e-12;
constexpr double kZeroCentreTol = 1e-6;
constexpr double kMarginFloor = 0.050;
constexpr double kMarginCeiling = 0.056;
constexpr double kLevel = 0.1;
constexpr double kBoundarySeconds = 0.1;
constexpr double kMirandaSeconds = 1.0;
constexpr double kCriterionSeconds = 60.0;
constexpr int kMirandaDepth = 14;
constexpr int kPathDepth = 12;
constexpr int kWindingDepth = 16;
constexpr int kContainmentTrials = 100000;
constexpr int kSoundnessSamples = 10000;

const Eigen::Vector2d kZero(2 * pi / 3, -2 * pi / 3);

std::mt19937_64 rng(20240917);
double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

TrigPolynomial phi() { return char_poly(triangle_distribution()); }

std::complex<double> direct_phi(double x, double y) {
    using namespace std::complex_literals;
    return (std::exp(1i * x) + std::exp(1i * y) + std::exp(1i * (x + y))) / 3.0;
}

/// Exact sup margin of the triangle-zero square: the x = 0 and x = 1 edges
/// reach |Im phi| = (1 - 2 sin(pi/8)) / (3 sqrt 2) at y = 0.
const double kMarginOracle = (1 - 2 * std::sin(pi / 8)) / (3 * std::sqrt(2.0));

struct Verdict {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Verdict()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Verdict out{false, ""};
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    if (took.count() >= kCriterionSeconds) {
        out.pass = false;
        out.detail += " (over the time limit)";
    }
    char head[64];
    std::snprintf(head, sizeof head, "[%s] %2d ", out.pass ? "PASS" : "FAIL", id);
    char time[32];
    std::snprintf(time, sizeof time, " (%.3f s)", took.count());
    std::cout << head << title << ": " << out.detail << time << std::endl;
    failures += !out.pass;
}

double seconds_of(const std::function<void()>& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(RZCERT_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Eigen::Vector2d preimage(const AffineSquareMap& m, const Eigen::Vector2d& p) {
    const double det = m.determinant();
    const Eigen::Vector2d d = p - m.base();
    return {(d.x() * m.v().y() - d.y() * m.v().x()) / det, (m.u().x() * d.y() - m.u().y() * d.x()) / det};
}

Box2 square_around(const Eigen::Vector2d& c, double side) {
    return {{c.x() - side / 2, c.x() + side / 2}, {c.y() - side / 2, c.y() + side / 2}};
}

}  // namespace

int main() {
    const TrigPolynomial poly = phi();

    criterion(1, "boundary identity phi = -1/3 on the sides of [-pi,pi]^2", [&] {
        double worst = 0;
        const double secs = seconds_of([&] {
            for (int k = 0; k < 100; ++k) {
                const double s = -pi + 2 * pi * k / 99;
                for (const Eigen::Vector2d& t : {Eigen::Vector2d(pi, s), Eigen::Vector2d(-pi, s), Eigen::Vector2d(s, pi),
                                                 Eigen::Vector2d(s, -pi)}) {
                    worst = std::max(worst, std::abs(eval_point(poly, t) + 1.0 / 3));
                    worst = std::max(worst, std::abs(direct_phi(t.x(), t.y()) + 1.0 / 3));
                }
            }
        });
        return Verdict{worst <= kPointTol && secs < kBoundarySeconds,
                       "max deviation " + fmt(worst) + ", " + fmt(secs) + " s"};
    });

    criterion(2, "anchor memberships", [&] {
        const std::complex<double> a = eval_point(poly, Eigen::Vector2d(0, 0));
        const std::complex<double> b = eval_point(poly, Eigen::Vector2d(pi, -pi));
        const std::complex<double> c = eval_point(poly, Eigen::Vector2d(pi / 2, pi / 2));
        const std::complex<double> d = eval_point(poly, Eigen::Vector2d(-pi / 2, -pi / 2));
        const bool ok = std::abs(a.real() - 1) <= kPointTol && a.real() >= kLevel &&
                        std::abs(b.real() + 1.0 / 3) <= kPointTol && b.real() <= -kLevel &&
                        std::abs(c.imag() - 2.0 / 3) <= kPointTol && c.imag() >= kLevel &&
                        std::abs(d.imag() + 2.0 / 3) <= kPointTol && d.imag() <= -kLevel;
        return Verdict{ok, "Re " + fmt(a.real()) + ", Re " + fmt(b.real()) + ", Im " + fmt(c.imag()) + ", Im " +
                               fmt(d.imag())};
    });

    criterion(3, "Miranda certificates at margins 0.025 and 0.05", [&] {
        bool ok = true;
        std::string detail;
        for (double margin : {0.025, 0.05}) {
            bool got = false;
            const double secs = seconds_of([&] {
                auto out = certify_miranda(poly, triangle_zero_map(), margin, kMirandaDepth);
                got = certified(out) && recheck(std::get<MirandaCertificate>(out));
            });
            ok = ok && got && secs < kMirandaSeconds;
            detail += (detail.empty() ? "" : ", ") + fmt(margin) + (got ? " certified in " : " FAILED in ") + fmt(secs) + " s";
        }
        return Verdict{ok, detail};
    });

    criterion(4, "certified margin bracket", [&] {
        // Second oracle: dense sampling of the four edges.
        const auto map = triangle_zero_map();
        double sampled = 1;
        for (int k = 0; k <= 100000; ++k) {
            const double s = k / 100000.0;
            const auto p0 = map(s, 0), p1 = map(s, 1), q0 = map(0, s), q1 = map(1, s);
            sampled = std::min({sampled, -direct_phi(p0.x(), p0.y()).real(), direct_phi(p1.x(), p1.y()).real(),
                                -direct_phi(q0.x(), q0.y()).imag(), direct_phi(q1.x(), q1.y()).imag()});
        }
        const double m = certified_margin(poly, map, kMirandaDepth);
        const bool ok = m >= kMarginFloor && m <= kMarginCeiling && m <= kMarginOracle &&
                        std::abs(sampled - kMarginOracle) < 1e-9;
        return Verdict{ok, "certified " + fmt(m) + ", closed form " + fmt(kMarginOracle) + ", sampled " + fmt(sampled)};
    });

    criterion(5, "zero isolation on [-pi,pi]^2", [&] {
        const auto clusters = zero_search(poly, Box2::square(-pi, pi), 1e-6);
        bool ok = clusters.size() == 2;
        double worst = 0;
        bool seen_pos = false, seen_neg = false;
        for (const auto& c : clusters) {
            const double dp = (c.hull.center() - kZero).norm();
            const double dn = (c.hull.center() + kZero).norm();
            seen_pos = seen_pos || dp <= kZeroCentreTol;
            seen_neg = seen_neg || dn <= kZeroCentreTol;
            worst = std::max(worst, std::min(dp, dn));
        }
        ok = ok && seen_pos && seen_neg;
        return Verdict{ok, std::to_string(clusters.size()) + " clusters, max centre offset " + fmt(worst)};
    });

    criterion(6, "winding certificates", [&] {
        std::string detail;
        bool ok = true;
        auto wind = [&](const std::vector<LoopPiece>& loop, const std::string& label,
                        const std::function<bool(int, double)>& accept) {
            auto out = winding_number(poly, loop, kWindingDepth);
            if (!certified(out)) {
                ok = false;
                detail += label + " inconclusive; ";
                return;
            }
            const auto& c = std::get<WindingCertificate>(out);
            ok = ok && accept(c.winding, c.modulus_floor) && recheck(c);
            detail += label + " " + std::to_string(c.winding) + "/" + fmt(c.modulus_floor) + "; ";
        };
        wind(loop_pieces(PolyPath::boundary(square_around(kZero, 0.2))), "zero+",
             [](int w, double f) { return std::abs(w) == 1 && f > 0; });
        wind(loop_pieces(PolyPath::boundary(square_around(-kZero, 0.2))), "zero-",
             [](int w, double f) { return std::abs(w) == 1 && f > 0; });
        wind(loop_pieces(PolyPath::boundary(Box2::square(-0.5, 0.5))), "free",
             [](int w, double f) { return w == 0 && f >= 0.5; });
        const auto map = triangle_zero_map();
        wind(map.boundary(), "psi", [](int w, double) { return std::abs(w) == 1; });
        const double off = (map(0.5, 1.0 / 6) - kZero).norm();
        const Eigen::Vector2d back = preimage(map, kZero);
        ok = ok && off <= kPointTol && std::abs(back.x() - 0.5) <= kPointTol && std::abs(back.y() - 1.0 / 6) <= kPointTol;
        return Verdict{ok, detail + "psi(1/2,1/6) offset " + fmt(off)};
    });

    criterion(7, "path constraints along both paths", [&] {
        const PolyPath first({{0, 0}, {0, -pi}, {pi, -pi}}, false);
        const PolyPath second({{0, 0}, {pi, 0}, {pi, -pi}}, false);
        const std::vector<PathConstraint> c1{{{0.0, 0.25}, Component::Re, kLevel, Direction::Above},
                                             {{0.25, 0.375}, Component::Im, -kLevel, Direction::Below},
                                             {{0.375, 1.0}, Component::Re, -kLevel, Direction::Below}};
        const std::vector<PathConstraint> c2{{{0.0, 0.25}, Component::Re, kLevel, Direction::Above},
                                             {{0.25, 0.375}, Component::Im, kLevel, Direction::Above},
                                             {{0.375, 1.0}, Component::Re, -kLevel, Direction::Below}};
        auto count = [&](const PolyPath& p, const std::vector<PathConstraint>& cs) -> int {
            auto out = verify_path_constraints(poly, p, cs, kPathDepth);
            if (!certified(out)) return -1;
            int good = 0;
            for (const auto& c : std::get<std::vector<SignCertificate>>(out)) good += recheck(c);
            return good;
        };
        const int a = count(first, c1);
        const int b = count(second, c2);
        // Closed forms on the first segment of the first path.
        double worst = 0;
        for (int k = 0; k <= 1000; ++k) {
            const double t = 0.5 * k / 1000;
            const auto z = eval_point(poly, first.point(t));
            worst = std::max({worst, std::abs(z.real() - (2.0 / 3 * std::cos(2 * pi * t) + 1.0 / 3)),
                              std::abs(z.imag() + 2.0 / 3 * std::sin(2 * pi * t))});
        }
        return Verdict{a == 3 && b == 3 && worst <= kPointTol,
                       std::to_string(a) + "/3 and " + std::to_string(b) + "/3 certified, closed-form deviation " +
                           fmt(worst)};
    });

    criterion(8, "slice identity after embedding into R^4", [&] {
        const TrigPolynomial sigma = char_poly(embed(triangle_distribution(), 4, {1, 2}));
        double worst = 0;
        for (int k = 0; k < 1000; ++k) {
            Eigen::Vector4d t;
            for (int i = 0; i < 4; ++i) t(i) = uniform(-20, 20);
            worst = std::max(worst, std::abs(eval_point(sigma, t) - direct_phi(t(0), t(1))));
        }
        return Verdict{worst <= kPointTol, "max deviation " + fmt(worst)};
    });

    criterion(9, "containment and sign-certificate soundness", [&] {
        int contained = 0;
        for (int k = 0; k < kContainmentTrials; ++k) {
            const int n = uniform_int(1, 5);
            Eigen::VectorXd w(n);
            Eigen::MatrixXd f(2, n);
            for (int j = 0; j < n; ++j) {
                w(j) = uniform(-1, 1);
                f(0, j) = uniform_int(-4, 4);
                f(1, j) = uniform_int(-4, 4);
            }
            const TrigPolynomial p(w, f);
            const double x = uniform(-5, 5), y = uniform(-5, 5);
            const Box2 box{{x, x + uniform(0, 1)}, {y, y + uniform(0, 1)}};
            const double tx = uniform(box.x.lo(), box.x.hi()), ty = uniform(box.y.lo(), box.y.hi());
            std::complex<double> direct = 0;
            for (int j = 0; j < n; ++j) direct += w(j) * std::exp(std::complex<double>(0, f(0, j) * tx + f(1, j) * ty));
            contained += enclose(p, box).contains(direct);
        }

        // Soundness: every edge of the 0.05 Miranda certificate plus random
        // box certificates, sampled densely.
        long samples = 0, violations = 0, certs = 0;
        auto probe = [&](const SignCertificate& c) {
            ++certs;
            for (const auto& piece : c.pieces) {
                for (int k = 0; k < kSoundnessSamples; ++k) {
                    const auto t = piece.frame.point(uniform(piece.params.x.lo(), piece.params.x.hi()),
                                                     uniform(piece.params.y.lo(), piece.params.y.hi()));
                    const auto z = direct_phi(t.x(), t.y());
                    const double v = c.target == Component::Re ? z.real() : z.imag();
                    ++samples;
                    violations += c.direction == Direction::Below ? !(v < c.threshold) : !(v > c.threshold);
                }
            }
        };
        auto m = certify_miranda(poly, triangle_zero_map(), 0.05, kMirandaDepth);
        if (certified(m)) {
            for (const auto& e : std::get<MirandaCertificate>(m).edges) probe(e);
        }
        for (int k = 0; k < 30; ++k) {
            const Eigen::Vector2d c(uniform(-pi, pi), uniform(-pi, pi));
            const Box2 box = square_around(c, uniform(0.05, 0.5));
            const auto target = k % 2 ? Component::Re : Component::Im;
            const auto z = direct_phi(c.x(), c.y());
            const double v = target == Component::Re ? z.real() : z.imag();
            const auto dir = v > 0 ? Direction::Above : Direction::Below;
            auto out = certify_sign(poly, target, box, v / 4, dir, 10);
            if (certified(out)) probe(std::get<SignCertificate>(out));
        }
        const bool ok = contained == kContainmentTrials && certified(m) && violations == 0 && certs > 4;
        return Verdict{ok, std::to_string(contained) + "/" + std::to_string(kContainmentTrials) + " contained; " +
                               std::to_string(violations) + " violations in " + std::to_string(samples) + " samples over " +
                               std::to_string(certs) + " certificates"};
    });

    criterion(10, "verify-paper output is byte-identical across runs", [&] {
        const auto dir = std::filesystem::temp_directory_path() / "rz-acceptance";
        std::filesystem::create_directories(dir);
        const auto a = dir / "run-a.json";
        const auto b = dir / "run-b.json";
        const int ra = run_cli("verify-paper --out " + a.string());
        const int rb = run_cli("verify-paper --out " + b.string());
        const std::string ta = slurp(a);
        const std::string tb = slurp(b);
        const int rc = run_cli("check " + a.string());
        const bool ok = ra == 0 && rb == 0 && rc == 0 && !ta.empty() && ta == tb;
        return Verdict{ok, "exit codes " + std::to_string(ra) + "," + std::to_string(rb) + ", check " + std::to_string(rc) +
                               ", " + std::to_string(ta.size()) + " bytes" + (ta == tb ? " identical" : " DIFFER")};
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL") << std::endl;
    return failures == 0 ? 0 : 1;
}
