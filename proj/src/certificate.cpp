#include "rz/certificate.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

namespace rz {

namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kFormat = "rz-certificate";
constexpr int kVersion = 1;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, "certificate: " + what); }

// ---- writing ---------------------------------------------------------------

json hex(double v) { return hex_double(v); }

json write(const Interval& x) { return json::array({hex(x.lo()), hex(x.hi())}); }

json write(const Eigen::Vector2d& p) { return json::array({hex(p.x()), hex(p.y())}); }

json write(const IVec2& v) { return json::array({write(v(0)), write(v(1))}); }

json write(const Box2& b) { return {{"x", write(b.x)}, {"y", write(b.y)}}; }

json write(const ComplexBox& z) { return {{"re", write(z.re)}, {"im", write(z.im)}}; }

json write(const Frame& f) { return {{"origin", write(f.origin)}, {"e1", write(f.e1)}, {"e2", write(f.e2)}}; }

json write(const Patch& p) { return {{"frame", write(p.frame)}, {"params", write(p.params)}}; }

json write(const TrigPolynomial& poly) {
    json terms = json::array();
    for (Eigen::Index j = 0; j < poly.size(); ++j) {
        json freq = json::array();
        for (int i = 0; i < poly.dim(); ++i) freq.push_back(hex(poly.frequencies()(i, j)));
        terms.push_back({{"weight", hex(poly.weight(j))}, {"frequency", std::move(freq)}});
    }
    return {{"dim", poly.dim()}, {"terms", std::move(terms)}};
}

void write_poly(json& out, const TrigPolynomial& poly) {
    out["polynomial"] = write(poly);
    out["fingerprint"] = fingerprint(poly);
}

// The polynomial is left to the caller so that embedded certificates can
// share their parent's.
json write_sign_body(const SignCertificate& c) {
    json out;
    out["target"] = std::string(to_string(c.target));
    out["direction"] = std::string(to_string(c.direction));
    out["threshold"] = hex(c.threshold);
    out["depth_used"] = c.depth_used;
    json pieces = json::array();
    for (const auto& p : c.pieces) pieces.push_back(write(p));
    out["pieces"] = std::move(pieces);
    json leaves = json::array();
    for (const auto& l : c.leaves) {
        leaves.push_back({{"piece", l.piece}, {"params", write(l.params)}, {"enclosure", write(l.enclosure)}});
    }
    out["leaves"] = std::move(leaves);
    return out;
}

json write_entry(const SignCertificate& c) {
    json out{{"kind", "sign"}};
    write_poly(out, c.poly);
    out.update(write_sign_body(c));
    return out;
}

json write_entry(const MirandaCertificate& c) {
    json out{{"kind", "miranda"}};
    write_poly(out, c.poly);
    out["map"] = {{"base", write(c.map.base())}, {"u", write(c.map.u())}, {"v", write(c.map.v())}};
    out["margin"] = hex(c.margin);
    out["orientation"] = {{"y_component", std::string(to_string(c.orientation.y_component))},
                          {"y_sign", c.orientation.y_sign},
                          {"x_sign", c.orientation.x_sign}};
    int depth = 0;
    for (const auto& e : c.edges) depth = std::max(depth, e.depth_used);
    out["depth_used"] = depth;
    json edges = json::array();
    constexpr std::array<Edge, 4> order{Edge::Bottom, Edge::Top, Edge::Left, Edge::Right};
    for (std::size_t i = 0; i < order.size(); ++i) {
        json e{{"edge", std::string(to_string(order[i]))}};
        e.update(write_sign_body(c.edges[i]));
        edges.push_back(std::move(e));
    }
    out["edges"] = std::move(edges);
    return out;
}

json write_entry(const WindingCertificate& c) {
    json out{{"kind", "winding"}};
    write_poly(out, c.poly);
    out["winding"] = c.winding;
    out["modulus_floor"] = hex(c.modulus_floor);
    json loop = json::array();
    for (const auto& p : c.loop) loop.push_back({{"frame", write(p.frame)}, {"from", write(p.from)}, {"to", write(p.to)}});
    out["loop"] = std::move(loop);
    json arcs = json::array();
    for (const auto& a : c.arcs) {
        arcs.push_back({{"piece", a.piece}, {"param", write(a.param)}, {"enclosure", write(a.enclosure)},
                        {"witness", hex(a.witness)}});
    }
    out["arcs"] = std::move(arcs);
    return out;
}

// ---- reading ---------------------------------------------------------------

double read_double(const json& j) {
    if (!j.is_string()) fail("expected a hexadecimal float string, got " + j.dump());
    return parse_hex_double(j.get<std::string>());
}

Interval read_interval(const json& j) {
    if (!j.is_array() || j.size() != 2) fail("expected an interval [lo, hi], got " + j.dump());
    return {read_double(j[0]), read_double(j[1])};
}

Eigen::Vector2d read_point(const json& j) {
    if (!j.is_array() || j.size() != 2) fail("expected a point [x, y], got " + j.dump());
    return {read_double(j[0]), read_double(j[1])};
}

IVec2 read_ivec(const json& j) {
    if (!j.is_array() || j.size() != 2) fail("expected an interval vector, got " + j.dump());
    return IVec2(read_interval(j[0]), read_interval(j[1]));
}

Box2 read_box(const json& j) { return {read_interval(j.at("x")), read_interval(j.at("y"))}; }

ComplexBox read_complex(const json& j) { return {read_interval(j.at("re")), read_interval(j.at("im"))}; }

Frame read_frame(const json& j) { return {read_ivec(j.at("origin")), read_ivec(j.at("e1")), read_ivec(j.at("e2"))}; }

Patch read_patch(const json& j) { return {read_frame(j.at("frame")), read_box(j.at("params"))}; }

TrigPolynomial read_poly(const json& entry) {
    const json& j = entry.at("polynomial");
    const int dim = j.at("dim").get<int>();
    const json& terms = j.at("terms");
    if (dim < 1 || !terms.is_array() || terms.empty()) fail("polynomial needs dim >= 1 and at least one term");
    Eigen::VectorXd w(terms.size());
    Eigen::MatrixXd f(dim, terms.size());
    for (std::size_t k = 0; k < terms.size(); ++k) {
        w(k) = read_double(terms[k].at("weight"));
        const json& freq = terms[k].at("frequency");
        if (!freq.is_array() || freq.size() != static_cast<std::size_t>(dim)) fail("frequency has the wrong length");
        for (int i = 0; i < dim; ++i) f(i, k) = read_double(freq[i]);
    }
    TrigPolynomial poly(w, f);
    if (entry.at("fingerprint").get<std::string>() != fingerprint(poly)) fail("polynomial fingerprint mismatch");
    return poly;
}

Component read_component(const json& j) {
    const auto s = j.get<std::string>();
    if (s == to_string(Component::Re)) return Component::Re;
    if (s == to_string(Component::Im)) return Component::Im;
    fail("unknown component '" + s + "'");
}

Direction read_direction(const json& j) {
    const auto s = j.get<std::string>();
    if (s == to_string(Direction::Below)) return Direction::Below;
    if (s == to_string(Direction::Above)) return Direction::Above;
    fail("unknown direction '" + s + "'");
}

SignCertificate read_sign_body(const json& j, const TrigPolynomial& poly) {
    SignCertificate c{poly, read_component(j.at("target")), read_direction(j.at("direction")),
                      read_double(j.at("threshold")), {}, {}, j.at("depth_used").get<int>()};
    for (const auto& p : j.at("pieces")) c.pieces.push_back(read_patch(p));
    for (const auto& l : j.at("leaves")) {
        c.leaves.push_back({l.at("piece").get<std::size_t>(), read_box(l.at("params")), read_interval(l.at("enclosure"))});
    }
    return c;
}

MirandaCertificate read_miranda(const json& j, const TrigPolynomial& poly) {
    const json& m = j.at("map");
    const auto map = make_affine_map(read_point(m.at("base")), read_point(m.at("u")), read_point(m.at("v")));
    const json& o = j.at("orientation");
    const MirandaOrientation orientation{read_component(o.at("y_component")), o.at("y_sign").get<int>(),
                                         o.at("x_sign").get<int>()};
    const json& edges = j.at("edges");
    if (!edges.is_array() || edges.size() != 4) fail("a Miranda certificate needs four edges");
    return {poly, map, read_double(j.at("margin")), orientation,
            {read_sign_body(edges[0], poly), read_sign_body(edges[1], poly), read_sign_body(edges[2], poly),
             read_sign_body(edges[3], poly)}};
}

WindingCertificate read_winding(const json& j, const TrigPolynomial& poly) {
    WindingCertificate c{poly, {}, j.at("winding").get<int>(), read_double(j.at("modulus_floor")), {}};
    for (const auto& p : j.at("loop")) {
        c.loop.push_back({read_frame(p.at("frame")), read_point(p.at("from")), read_point(p.at("to"))});
    }
    for (const auto& a : j.at("arcs")) {
        c.arcs.push_back({a.at("piece").get<std::size_t>(), read_interval(a.at("param")),
                          read_complex(a.at("enclosure")), read_double(a.at("witness"))});
    }
    return c;
}

Certificate read_entry(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    const TrigPolynomial poly = read_poly(j);
    if (kind == "sign") return read_sign_body(j, poly);
    if (kind == "miranda") return read_miranda(j, poly);
    if (kind == "winding") return read_winding(j, poly);
    fail("unknown certificate kind '" + kind + "'");
}

}  // namespace

std::string hex_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

double parse_hex_double(std::string_view text) {
    const std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) fail("malformed float '" + s + "'");
    return v;
}

std::string fingerprint(const TrigPolynomial& poly) {
    std::uint64_t h = 14695981039346656037ull;
    auto feed = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= ';';
        h *= 1099511628211ull;
    };
    feed(std::to_string(poly.dim()));
    for (Eigen::Index j = 0; j < poly.size(); ++j) {
        feed(hex_double(poly.weight(j)));
        for (int i = 0; i < poly.dim(); ++i) feed(hex_double(poly.frequencies()(i, j)));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

std::string write_document(const CertificateDocument& doc) {
    json out;
    out["format"] = std::string(kFormat);
    out["version"] = kVersion;
    out["operation"] = doc.operation;
    json entries = json::array();
    for (const auto& [name, cert] : doc.entries) {
        json e{{"name", name}};
        e.update(std::visit([](const auto& c) { return write_entry(c); }, cert));
        entries.push_back(std::move(e));
    }
    out["certificates"] = std::move(entries);
    return out.dump(1) + "\n";
}

CertificateDocument read_document(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(e.what());
    }
    try {
        if (j.at("format").get<std::string>() != kFormat) fail("not an rz certificate document");
        if (j.at("version").get<int>() != kVersion) fail("unsupported version " + j.at("version").dump());
        CertificateDocument doc{j.at("operation").get<std::string>(), {}};
        for (const auto& e : j.at("certificates")) doc.entries.emplace_back(e.at("name").get<std::string>(), read_entry(e));
        return doc;
    } catch (const json::exception& e) {
        fail(e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        fail(e.what());
    }
}

bool recheck(const Certificate& cert) {
    return std::visit([](const auto& c) { return rz::recheck(c); }, cert);
}

bool recheck(const CertificateDocument& doc) {
    if (doc.entries.empty()) return false;
    for (const auto& [name, cert] : doc.entries) {
        if (!recheck(cert)) return false;
    }
    return true;
}

}  // namespace rz
