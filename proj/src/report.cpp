#include "rz/report.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace rz {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kPointTol = 1e-12;
constexpr double kLevel = 0.1;
constexpr double kZeroTol = 1e-6;
constexpr std::uint64_t kSeed = 20240917;

struct Depths {
    int boundary = 8;
    int miranda = 14;
    int path = 12;
    int winding = 16;
};

Depths depths(const VerifyOptions& o) {
    if (!o.max_depth) return {};
    const int d = *o.max_depth;
    return {d, d, d, d};
}

DiscreteDistribution law(const VerifyOptions& o) {
    if (o.weights.empty()) return triangle_distribution();
    const auto base = triangle_distribution();
    std::vector<Eigen::VectorXd> atoms;
    for (Eigen::Index j = 0; j < base.size(); ++j) atoms.push_back(base.atoms().col(j));
    return make_distribution(2, atoms, o.weights);
}

std::complex<double> at(const TrigPolynomial& p, double x, double y) { return eval_point(p, Eigen::Vector2d(x, y)); }

class Runner {
public:
    Runner(const VerifyOptions& options)
        : dist_(law(options)), poly_(char_poly(dist_)), depth_(depths(options)), rng_(kSeed) {
        report_.certificates.operation = "verify_paper";
    }

    VerificationReport run() {
        boundary_identity();
        boundary_enclosure();
        anchors();
        miranda(0.025, "0.025");
        miranda(0.05, "0.05");
        margin_bracket();
        zero_isolation();
        winding();
        paths();
        slice();
        containment();
        sign_soundness();
        round_trip();
        return std::move(report_);
    }

private:
    using Body = std::function<void(Check&)>;

    void check(std::string name, int criterion, std::string claim, std::string expected, const Body& body) {
        Check c{std::move(name), criterion, std::move(claim), "", std::move(expected), false};
        try {
            body(c);
        } catch (const Error& e) {
            c.pass = false;
            c.computed = std::string(to_string(e.code())) + ": " + e.what();
        }
        report_.checks.push_back(std::move(c));
    }

    void keep(std::string name, Certificate cert) { report_.certificates.entries.emplace_back(std::move(name), std::move(cert)); }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    void boundary_identity() {
        check("boundary-identity", 1, "phi = -1/3 on every side of [-pi,pi]^2 (100 points per side)", "<= 1e-12",
              [&](Check& c) {
                  double worst = 0;
                  for (int k = 0; k < 100; ++k) {
                      const double s = -pi + 2 * pi * k / 99;
                      for (const auto& z : {at(poly_, pi, s), at(poly_, -pi, s), at(poly_, s, pi), at(poly_, s, -pi)}) {
                          worst = std::max(worst, std::abs(z - std::complex<double>(-1.0 / 3)));
                      }
                  }
                  c.computed = "max deviation " + decimal17(worst);
                  c.pass = worst <= kPointTol;
              });
    }

    void boundary_enclosure() {
        check("boundary-enclosure", 1, "Re phi < -1/10 on {pi} x [-pi,pi], certified", "certificate", [&](Check& c) {
            auto out = certify_sign(poly_, Component::Re, Patch::segment({pi, -pi}, {pi, pi}), -kLevel,
                                    Direction::Below, depth_.boundary);
            if (!certified(out)) {
                c.computed = "inconclusive: " + std::get<Inconclusive>(out).reason;
                return;
            }
            auto& cert = std::get<SignCertificate>(out);
            c.computed = std::to_string(cert.leaves.size()) + " leaves, depth " + std::to_string(cert.depth_used);
            c.pass = recheck(cert);
            keep("boundary-enclosure", std::move(cert));
        });
    }

    void anchors() {
        struct Anchor {
            double x, y;
            Component part;
            double value;
        };
        const Anchor list[] = {
            {0, 0, Component::Re, 1.0},
            {pi, -pi, Component::Re, -1.0 / 3},
            {pi / 2, pi / 2, Component::Im, 2.0 / 3},
            {-pi / 2, -pi / 2, Component::Im, -2.0 / 3},
        };
        check("anchor-memberships", 2, "Re phi(0,0)=1, Re phi(pi,-pi)=-1/3, Im phi(pi/2,pi/2)=2/3, Im phi(-pi/2,-pi/2)=-2/3",
              "each within 1e-12 and beyond +-1/10", [&](Check& c) {
                  bool ok = true;
                  std::string values;
                  for (const auto& a : list) {
                      const auto z = at(poly_, a.x, a.y);
                      const double v = a.part == Component::Re ? z.real() : z.imag();
                      ok = ok && std::abs(v - a.value) <= kPointTol && std::abs(v) >= kLevel;
                      values += (values.empty() ? "" : " ") + decimal17(v);
                  }
                  c.computed = values;
                  c.pass = ok;
              });
    }

    void miranda(double margin, const std::string& label) {
        const std::string name = "miranda-" + label;
        check(name, 3, "Miranda sign conditions on the triangle-zero square at margin " + label,
              "certificate, depth <= 14", [&](Check& c) {
                  auto out = certify_miranda(poly_, triangle_zero_map(), margin, depth_.miranda);
                  if (!certified(out)) {
                      c.computed = "inconclusive: " + std::get<Inconclusive>(out).reason;
                      return;
                  }
                  auto& cert = std::get<MirandaCertificate>(out);
                  int depth = 0;
                  for (const auto& e : cert.edges) depth = std::max(depth, e.depth_used);
                  c.computed = "certified, depth " + std::to_string(depth);
                  c.pass = recheck(cert);
                  keep(name, std::move(cert));
              });
    }

    /// Smallest signed edge value over 10^4 samples per edge, in the
    /// standard orientation.
    double sampled_edge_margin() {
        const auto map = triangle_zero_map();
        double m = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 10000; ++k) {
            const double s = k / 10000.0;
            m = std::min({m, -eval_point(poly_, map(s, 0)).real(), eval_point(poly_, map(s, 1)).real(),
                          -eval_point(poly_, map(0, s)).imag(), eval_point(poly_, map(1, s)).imag()});
        }
        return m;
    }

    void margin_bracket() {
        check("margin-bracket", 4, "largest certified Miranda margin for the triangle-zero square",
              "in [0.050, sampled edge minimum]", [&](Check& c) {
                  const double oracle = sampled_edge_margin();
                  const double m = certified_margin(poly_, triangle_zero_map(), depth_.miranda);
                  c.computed = decimal17(m) + " (edge sampling " + decimal17(oracle) + ")";
                  c.pass = m >= 0.050 && m <= oracle;
              });
    }

    void zero_isolation() {
        check("zero-isolation", 5, "zeros of phi in [-pi,pi]^2 are (2pi/3,-2pi/3) and (-2pi/3,2pi/3)",
              "exactly 2 clusters, centers within 1e-6", [&](Check& c) {
                  const auto clusters = zero_search(poly_, Box2::square(-pi, pi), kZeroTol);
                  const Eigen::Vector2d z(2 * pi / 3, -2 * pi / 3);
                  double worst = 0;
                  bool both = clusters.size() == 2;
                  for (const auto& cl : clusters) {
                      const double d = std::min((cl.hull.center() - z).norm(), (cl.hull.center() + z).norm());
                      worst = std::max(worst, d);
                  }
                  if (both) both = (clusters[0].hull.center() - clusters[1].hull.center()).norm() > 1;
                  c.computed = std::to_string(clusters.size()) + " clusters, max center offset " + decimal17(worst);
                  c.pass = both && worst <= kZeroTol;
              });
    }

    void winding_check(const std::string& name, const std::string& claim, const std::string& expected,
                       const std::vector<LoopPiece>& loop, const std::function<bool(int, double)>& accept) {
        check(name, 6, claim, expected, [&](Check& c) {
            auto out = winding_number(poly_, loop, depth_.winding);
            if (!certified(out)) {
                c.computed = "inconclusive: " + std::get<Inconclusive>(out).reason;
                return;
            }
            auto& cert = std::get<WindingCertificate>(out);
            c.computed = "winding " + std::to_string(cert.winding) + ", floor " + decimal17(cert.modulus_floor);
            c.pass = accept(cert.winding, cert.modulus_floor) && recheck(cert);
            keep(name, std::move(cert));
        });
    }

    void winding() {
        const Eigen::Vector2d z(2 * pi / 3, -2 * pi / 3);
        for (const auto& [name, centre] : {std::pair{std::string("winding-zero-a"), Eigen::Vector2d(z)},
                                           std::pair{std::string("winding-zero-b"), Eigen::Vector2d(-z)}}) {
            const Box2 box{{centre.x() - 0.1, centre.x() + 0.1}, {centre.y() - 0.1, centre.y() + 0.1}};
            winding_check(name, "square of side 0.2 around " + decimal17(centre.x()) + "," + decimal17(centre.y()),
                          "|winding| = 1, floor > 0", loop_pieces(PolyPath::boundary(box)),
                          [](int w, double floor) { return std::abs(w) == 1 && floor > 0; });
        }
        winding_check("winding-zero-free", "boundary of [-0.5,0.5]^2", "winding 0, floor >= 0.5",
                      loop_pieces(PolyPath::boundary(Box2::square(-0.5, 0.5))),
                      [](int w, double floor) { return w == 0 && floor >= 0.5; });
        const auto map = triangle_zero_map();
        const bool centred = (map(0.5, 1.0 / 6) - z).norm() <= kPointTol;
        winding_check("winding-mapped-square", "boundary of the triangle-zero square, which maps (1/2,1/6) to the zero",
                      "|winding| = 1 and image of (1/2,1/6) within 1e-12", map.boundary(),
                      [centred](int w, double) { return std::abs(w) == 1 && centred; });
    }

    void path_check(const std::string& name, const PolyPath& path, const std::vector<PathConstraint>& cs,
                    const std::string& claim) {
        check(name, 7, claim, "one certificate per constraint, depth <= 12", [&](Check& c) {
            auto out = verify_path_constraints(poly_, path, cs, depth_.path);
            if (!certified(out)) {
                c.computed = "inconclusive: " + std::get<Inconclusive>(out).reason;
                return;
            }
            auto& certs = std::get<std::vector<SignCertificate>>(out);
            bool ok = certs.size() == cs.size();
            for (std::size_t k = 0; k < certs.size(); ++k) {
                ok = ok && recheck(certs[k]);
                keep(name + "-" + std::to_string(k + 1), std::move(certs[k]));
            }
            c.computed = std::to_string(cs.size()) + " constraints certified";
            c.pass = ok;
        });
    }

    void paths() {
        path_check("path-first", PolyPath({{0, 0}, {0, -pi}, {pi, -pi}}, false),
                   {{{0.0, 0.25}, Component::Re, kLevel, Direction::Above},
                    {{0.25, 0.375}, Component::Im, -kLevel, Direction::Below},
                    {{0.375, 1.0}, Component::Re, -kLevel, Direction::Below}},
                   "(0,0) -> (0,-pi) -> (pi,-pi): Re > 1/10, then Im < -1/10, then Re < -1/10");
        path_check("path-second", PolyPath({{0, 0}, {pi, 0}, {pi, -pi}}, false),
                   {{{0.0, 0.25}, Component::Re, kLevel, Direction::Above},
                    {{0.25, 0.375}, Component::Im, kLevel, Direction::Above},
                    {{0.375, 1.0}, Component::Re, -kLevel, Direction::Below}},
                   "(0,0) -> (pi,0) -> (pi,-pi): Re > 1/10, then Im > 1/10, then Re < -1/10");
    }

    void slice() {
        check("slice-identity", 8, "embedding into R^4 at slots 1,2 leaves the characteristic function unchanged",
              "1000 random points within 1e-12", [&](Check& c) {
                  const TrigPolynomial sigma = char_poly(embed(dist_, 4, {1, 2}));
                  double worst = 0;
                  for (int k = 0; k < 1000; ++k) {
                      Eigen::Vector4d t;
                      for (int i = 0; i < 4; ++i) t(i) = uniform(-10, 10);
                      worst = std::max(worst, std::abs(eval_point(sigma, t) - eval_point(poly_, t.head<2>())));
                  }
                  c.computed = "max deviation " + decimal17(worst);
                  c.pass = worst <= kPointTol;
              });
    }

    TrigPolynomial random_poly() {
        const int n = uniform_int(1, 5);
        Eigen::VectorXd w(n);
        Eigen::MatrixXd f(2, n);
        for (int j = 0; j < n; ++j) {
            w(j) = uniform(-1, 1);
            f(0, j) = uniform_int(-4, 4);
            f(1, j) = uniform_int(-4, 4);
        }
        return {w, f};
    }

    void containment() {
        check("containment", 9, "enclosures contain sampled values (random polynomial, box, point)",
              "100000 of 100000", [&](Check& c) {
                  int hits = 0;
                  constexpr int kTrials = 100000;
                  for (int k = 0; k < kTrials; ++k) {
                      const TrigPolynomial p = random_poly();
                      const double x = uniform(-4, 4);
                      const double y = uniform(-4, 4);
                      const Box2 box{{x, x + uniform(0, 1)}, {y, y + uniform(0, 1)}};
                      const Eigen::Vector2d t(uniform(box.x.lo(), box.x.hi()), uniform(box.y.lo(), box.y.hi()));
                      hits += enclose(p, box).contains(eval_point(p, t));
                  }
                  c.computed = std::to_string(hits) + " of " + std::to_string(kTrials);
                  c.pass = hits == kTrials;
              });
    }

    void sign_soundness() {
        check("sign-soundness", 9, "every sign certificate holds at 10^4 random points of each piece",
              "no violations", [&](Check& c) {
                  long samples = 0;
                  long bad = 0;
                  auto probe = [&](const SignCertificate& cert) {
                      for (const auto& piece : cert.pieces) {
                          for (int k = 0; k < 10000; ++k) {
                              const double s = uniform(piece.params.x.lo(), piece.params.x.hi());
                              const double r = uniform(piece.params.y.lo(), piece.params.y.hi());
                              const auto z = eval_point(cert.poly, piece.frame.point(s, r));
                              const double v = cert.target == Component::Re ? z.real() : z.imag();
                              ++samples;
                              bad += cert.direction == Direction::Below ? !(v < cert.threshold) : !(v > cert.threshold);
                          }
                      }
                  };
                  for (const auto& [name, cert] : report_.certificates.entries) {
                      if (const auto* s = std::get_if<SignCertificate>(&cert)) probe(*s);
                      if (const auto* m = std::get_if<MirandaCertificate>(&cert)) {
                          for (const auto& e : m->edges) probe(e);
                      }
                  }
                  c.computed = std::to_string(bad) + " violations in " + std::to_string(samples) + " samples";
                  c.pass = samples > 0 && bad == 0;
              });
    }

    void round_trip() {
        check("certificate-roundtrip", 10, "certificate document re-reads, re-checks and re-serializes identically",
              "byte-identical, all re-check", [&](Check& c) {
                  const std::string text = write_document(report_.certificates);
                  const auto back = read_document(text);
                  const bool same = write_document(back) == text;
                  const bool ok = recheck(back);
                  c.computed = std::to_string(back.entries.size()) + " certificates, " + std::to_string(text.size()) +
                               " bytes" + (same ? "" : ", bytes differ") + (ok ? "" : ", re-check failed");
                  c.pass = same && ok;
              });
    }

    DiscreteDistribution dist_;
    TrigPolynomial poly_;
    Depths depth_;
    std::mt19937_64 rng_;
    VerificationReport report_;
};

}  // namespace

bool VerificationReport::passed() const {
    if (checks.empty()) return false;
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

VerificationReport verify_paper(const VerifyOptions& options) { return Runner(options).run(); }

std::string format_report(const VerificationReport& report) {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "%-4s %-3s %-24s %s\n", "", "#", "check", "claim");
    os << line;
    for (const auto& c : report.checks) {
        std::snprintf(line, sizeof line, "%-4s %-3d %-24s ", c.pass ? "PASS" : "FAIL", c.criterion, c.name.c_str());
        os << line << c.claim << "\n";
        os << std::string(34, ' ') << "computed: " << c.computed << "\n";
        os << std::string(34, ' ') << "expected: " << c.expected << "\n";
    }
    os << (report.passed() ? "OVERALL PASS" : "OVERALL FAIL") << "\n";
    return os.str();
}

std::string decimal17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace rz
