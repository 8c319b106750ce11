// rzcert: evaluate characteristic functions of discrete laws and emit or
// re-check certificates about their zeros.
//
// Exit codes: 0 success, 1 verification failure or inconclusive result,
// 2 usage or parse error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rz/certificate.hpp"
#include "rz/distribution_file.hpp"
#include "rz/report.hpp"

namespace {

using namespace rz;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A decimal number or a rational multiple of pi: "0.5", "-pi", "2pi/3",
/// "3*pi/4", "pi/8".
double parse_scalar(const std::string& token) {
    static const std::regex pi_form(R"(\s*([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*)");
    std::smatch m;
    if (std::regex_match(token, m, pi_form)) {
        double v = std::numbers::pi;
        if (m[2].matched) v *= std::stod(m[2]);
        if (m[3].matched) v /= std::stod(m[3]);
        return m[1] == "-" ? -v : v;
    }
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || token.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(v)) {
        throw UsageError("not a number: '" + token + "'");
    }
    return v;
}

std::vector<double> parse_list(const std::string& text, std::size_t count, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_scalar(item));
    if (count != 0 && out.size() != count) {
        throw UsageError(flag + " expects " + std::to_string(count) + " comma-separated values, got " +
                         std::to_string(out.size()));
    }
    return out;
}

DiscreteDistribution named_distribution(const std::string& name) {
    if (name == "paper-mu") return triangle_distribution();
    if (name == "delta0") return make_distribution(2, {Eigen::Vector2d(0, 0)}, std::vector<double>{1.0});
    throw UsageError("unknown built-in distribution '" + name + "' (known: paper-mu, delta0)");
}

AffineSquareMap named_map(const std::string& name) {
    if (name == "paper-psi") return triangle_zero_map();
    if (name == "identity") return make_affine_map({0, 0}, {1, 0}, {0, 1});
    throw UsageError("unknown built-in map '" + name + "' (known: paper-psi, identity)");
}

struct Options {
    std::string dist;
    std::string builtin;
    std::string point;
    std::string box;
    std::string map;
    std::string builtin_map;
    std::string eps;
    std::string weights;
    double tol = 1e-6;
    std::optional<int> max_depth;
    std::string out;
    int grid = 0;
    std::string file;

    DiscreteDistribution distribution() const {
        if (!dist.empty()) return load_distribution(dist);
        return named_distribution(builtin.empty() ? "paper-mu" : builtin);
    }

    TrigPolynomial polynomial() const { return char_poly(distribution()); }

    Box2 region(const char* fallback) const {
        const auto v = parse_list(box.empty() ? fallback : box, 4, "--box");
        if (!(v[0] <= v[1]) || !(v[2] <= v[3])) throw UsageError("--box needs XLO <= XHI and YLO <= YHI");
        return {{v[0], v[1]}, {v[2], v[3]}};
    }

    AffineSquareMap affine_map() const {
        if (map.empty()) return named_map(builtin_map.empty() ? "paper-psi" : builtin_map);
        const auto v = parse_list(map, 6, "--map");
        return make_affine_map({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]});
    }

    int depth(int fallback) const { return max_depth.value_or(fallback); }
};

std::string complex17(std::complex<double> z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.17g %c %.17gi", z.real(), std::signbit(z.imag()) ? '-' : '+', std::abs(z.imag()));
    return buf;
}

std::string box17(const Box2& b) {
    return "[" + decimal17(b.x.lo()) + ", " + decimal17(b.x.hi()) + "] x [" + decimal17(b.y.lo()) + ", " +
           decimal17(b.y.hi()) + "]";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
    if (!out) throw UsageError("failed writing '" + path + "'");
}

void emit(const Options& o, const std::string& operation, std::string name, Certificate cert) {
    if (o.out.empty()) return;
    CertificateDocument doc{operation, {}};
    doc.entries.emplace_back(std::move(name), std::move(cert));
    write_file(o.out, write_document(doc));
}

std::string describe(const MirandaOrientation& o) {
    return std::string(to_string(o.y_component)) + (o.y_sign < 0 ? " -/+" : " +/-") + " across y, " +
           std::string(o.y_component == Component::Re ? "im" : "re") + (o.x_sign < 0 ? " -/+" : " +/-") + " across x";
}

int cmd_eval(const Options& o) {
    const auto poly = o.polynomial();
    if (o.point.empty()) throw UsageError("eval needs --point");
    const auto t = parse_list(o.point, 0, "--point");
    std::cout << complex17(eval_point(poly, Eigen::Map<const Eigen::VectorXd>(t.data(), static_cast<Eigen::Index>(t.size()))))
              << "\n";
    return kOk;
}

int cmd_zeros(const Options& o) {
    const auto poly = o.polynomial();
    require_planar(poly);
    const Box2 box = o.region("-pi,pi,-pi,pi");
    if (!(o.tol > 0)) throw UsageError("--tol must be positive");
    if (o.grid != 0) {
        if (o.grid < 2) throw UsageError("--grid needs at least 2 points per axis");
        if (o.out.empty()) throw UsageError("--grid needs --out for the table");
        std::ostringstream csv;
        csv << "x,y,re,im,abs\n";
        const int n = o.grid;
        for (int j = 0; j < n; ++j) {
            const double y = box.y.lo() + (box.y.hi() - box.y.lo()) * j / (n - 1);
            for (int i = 0; i < n; ++i) {
                const double x = box.x.lo() + (box.x.hi() - box.x.lo()) * i / (n - 1);
                const auto z = eval_point(poly, Eigen::Vector2d(x, y));
                csv << decimal17(x) << ',' << decimal17(y) << ',' << decimal17(z.real()) << ',' << decimal17(z.imag())
                    << ',' << decimal17(std::abs(z)) << '\n';
            }
        }
        write_file(o.out, csv.str());
    }
    try {
        const auto clusters = zero_search(poly, box, o.tol);
        if (clusters.empty()) {
            std::cout << "no zeros\n";
            return kOk;
        }
        std::cout << clusters.size() << " cluster(s)\n";
        for (const auto& c : clusters) {
            const auto m = c.hull.center();
            std::cout << "center " << decimal17(m.x()) << "," << decimal17(m.y()) << "  hull " << box17(c.hull)
                      << "  boxes " << c.boxes << "\n";
        }
        return kOk;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        std::cout << "FAIL " << e.what() << "\n";
        return kFailed;
    }
}

int cmd_miranda(const Options& o) {
    const auto poly = o.polynomial();
    const auto map = o.affine_map();
    const int depth = o.depth(14);
    double margin = 0;
    if (o.eps.empty()) {
        margin = certified_margin(poly, map, depth);
        if (margin == 0) {
            std::cout << "INCONCLUSIVE no positive margin certifies at depth " << depth << "\n";
            return kFailed;
        }
    } else {
        margin = parse_scalar(o.eps);
        if (!(margin > 0)) throw UsageError("--eps must be positive");
    }
    auto out = certify_miranda(poly, map, margin, depth);
    if (!certified(out)) {
        std::cout << "INCONCLUSIVE margin " << decimal17(margin) << ": " << std::get<Inconclusive>(out).reason << "\n";
        return kFailed;
    }
    auto& cert = std::get<MirandaCertificate>(out);
    std::cout << "PASS margin " << decimal17(margin) << " orientation " << describe(cert.orientation) << "\n";
    emit(o, "certify_miranda", "miranda", std::move(cert));
    return kOk;
}

int cmd_winding(const Options& o) {
    const auto poly = o.polynomial();
    const int depth = o.depth(16);
    std::vector<LoopPiece> loop;
    if (!o.box.empty()) {
        loop = loop_pieces(PolyPath::boundary(o.region("")));
    } else {
        loop = o.affine_map().boundary();
    }
    auto out = winding_number(poly, loop, depth);
    if (!certified(out)) {
        std::cout << "INCONCLUSIVE " << std::get<Inconclusive>(out).reason << "\n";
        return kFailed;
    }
    auto& cert = std::get<WindingCertificate>(out);
    std::cout << "PASS winding " << cert.winding << " modulus_floor " << decimal17(cert.modulus_floor) << "\n";
    emit(o, "winding_number", "winding", std::move(cert));
    return kOk;
}

int cmd_bound(const Options& o) {
    const auto poly = o.polynomial();
    const double b = modulus_lower_bound(poly, o.region("-pi,pi,-pi,pi"), o.depth(10));
    std::cout << decimal17(b) << "\n";
    return kOk;
}

int cmd_search(const Options& o) {
    const auto poly = o.polynomial();
    SearchConfig config;
    if (o.max_depth) config.max_depth = *o.max_depth;
    if (!o.eps.empty()) config.min_margin = parse_scalar(o.eps);
    auto out = search_box(poly, o.region("-pi,pi,-pi,pi"), config);
    if (!certified(out)) {
        std::cout << "NOT FOUND " << std::get<Inconclusive>(out).reason << "\n";
        return kFailed;
    }
    auto& found = std::get<SearchResult>(out);
    const auto& m = found.map;
    std::cout << "PASS margin " << decimal17(found.margin) << " map " << decimal17(m.base().x()) << ","
              << decimal17(m.base().y()) << "," << decimal17(m.u().x()) << "," << decimal17(m.u().y()) << ","
              << decimal17(m.v().x()) << "," << decimal17(m.v().y()) << "\n";
    emit(o, "search_box", "miranda", std::move(found.certificate));
    return kOk;
}

int cmd_verify_paper(const Options& o) {
    VerifyOptions options;
    if (!o.weights.empty()) options.weights = parse_list(o.weights, 3, "--weights");
    options.max_depth = o.max_depth;
    const auto report = verify_paper(options);
    std::cout << format_report(report);
    if (!o.out.empty()) write_file(o.out, write_document(report.certificates));
    return report.passed() ? kOk : kFailed;
}

int cmd_check(const Options& o) {
    std::ifstream in(o.file, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + o.file + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto doc = read_document(buf.str());
    bool all = !doc.entries.empty();
    for (const auto& [name, cert] : doc.entries) {
        const bool ok = recheck(cert);
        all = all && ok;
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    }
    std::cout << (all ? "PASS " : "FAIL ") << doc.operation << " (" << doc.entries.size() << " certificates)\n";
    return all ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Characteristic functions of discrete laws and certificates about their zeros"};
    app.require_subcommand(1);
    Options o;

    auto add_dist = [&o](CLI::App* cmd) {
        auto* d = cmd->add_option("--dist", o.dist, "distribution file (JSON: dim, atoms, weights)");
        auto* b = cmd->add_option("--builtin", o.builtin, "built-in distribution: paper-mu (default) or delta0");
        d->excludes(b);
    };
    auto add_map = [&o](CLI::App* cmd) {
        auto* m = cmd->add_option("--map", o.map, "BASE_X,BASE_Y,UX,UY,VX,VY");
        auto* b = cmd->add_option("--builtin-map", o.builtin_map, "built-in map: paper-psi (default) or identity");
        m->excludes(b);
    };
    auto add_depth = [&o](CLI::App* cmd) {
        cmd->add_option("--max-depth", o.max_depth, "maximum bisection depth")->check(CLI::NonNegativeNumber);
    };
    const char* box_help = "XLO,XHI,YLO,YHI (numbers or multiples of pi)";

    auto* eval = app.add_subcommand("eval", "print the characteristic function at a point");
    add_dist(eval);
    eval->add_option("--point", o.point, "comma-separated coordinates")->required();

    auto* zeros = app.add_subcommand("zeros", "isolate zeros by branch-and-prune");
    add_dist(zeros);
    zeros->add_option("--box", o.box, box_help);
    zeros->add_option("--tol", o.tol, "box diameter at which refinement stops")->check(CLI::PositiveNumber);
    zeros->add_option("--grid", o.grid, "write an N x N table of x,y,re,im,abs to --out");
    zeros->add_option("--out", o.out, "grid output path");

    auto* miranda = app.add_subcommand("miranda", "certify a robust zero on an affine square");
    add_dist(miranda);
    add_map(miranda);
    miranda->add_option("--eps", o.eps, "margin; largest certifiable margin when omitted");
    add_depth(miranda);
    miranda->add_option("--out", o.out, "certificate output path");

    auto* winding = app.add_subcommand("winding", "certified winding number around a box or mapped square");
    add_dist(winding);
    add_map(winding);
    winding->add_option("--box", o.box, box_help);
    add_depth(winding);
    winding->add_option("--out", o.out, "certificate output path");

    auto* bound = app.add_subcommand("bound", "certified lower bound for the modulus on a box");
    add_dist(bound);
    bound->add_option("--box", o.box, box_help);
    add_depth(bound);

    auto* search = app.add_subcommand("search", "look for a certifiable square around a zero");
    add_dist(search);
    search->add_option("--box", o.box, box_help);
    search->add_option("--eps", o.eps, "minimum margin to accept");
    add_depth(search);
    search->add_option("--out", o.out, "certificate output path");

    auto* verify = app.add_subcommand("verify-paper", "reproduce every claim for the triangle law");
    verify->add_option("--weights", o.weights, "replace the three 1/3 weights, e.g. 0.34,0.33,0.33");
    add_depth(verify);
    verify->add_option("--out", o.out, "certificate document output path");

    auto* check = app.add_subcommand("check", "re-check a certificate document");
    check->add_option("file", o.file, "certificate document")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*eval) return cmd_eval(o);
        if (*zeros) return cmd_zeros(o);
        if (*miranda) return cmd_miranda(o);
        if (*winding) return cmd_winding(o);
        if (*bound) return cmd_bound(o);
        if (*search) return cmd_search(o);
        if (*verify) return cmd_verify_paper(o);
        if (*check) return cmd_check(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
