#include "rz/enclose.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace rz {

double ComplexBox::abs_lower_bound() const {
    const double dx = re.mig();
    const double dy = im.mig();
    return rounding::sqrt_down(rounding::add_down(rounding::mul_down(dx, dx), rounding::mul_down(dy, dy)));
}

std::pair<Box2, Box2> Box2::bisect() const {
    Patch a;
    Patch b;
    if (!Patch::box(*this).bisect(a, b)) return {*this, *this};
    return {a.params, b.params};
}

Frame Frame::axes() {
    return affine(Eigen::Vector2d::Zero(), Eigen::Vector2d::UnitX(), Eigen::Vector2d::UnitY());
}

Frame Frame::affine(const Eigen::Vector2d& origin, const Eigen::Vector2d& e1, const Eigen::Vector2d& e2) {
    return {to_interval(origin), to_interval(e1), to_interval(e2)};
}

Frame Frame::segment(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return {to_interval(a), difference(b, a), to_interval(Eigen::Vector2d::Zero())};
}

Eigen::Vector2d Frame::point(double s, double r) const {
    auto mid = [](const IVec2& v) { return Eigen::Vector2d(v.x().mid(), v.y().mid()); };
    return mid(origin) + s * mid(e1) + r * mid(e2);
}

std::pair<double, double> Patch::extents() const {
    return {rounding::mul_up(params.x.width(), norm_up(frame.e1)),
            rounding::mul_up(params.y.width(), norm_up(frame.e2))};
}

bool Patch::bisect(Patch& first, Patch& second) const {
    const auto [ex, ey] = extents();
    if (ex == 0 && ey == 0) return false;
    Box2 a = params;
    Box2 b = params;
    if (ex >= ey) {
        const double m = params.x.mid();
        a.x = {params.x.lo(), m};
        b.x = {m, params.x.hi()};
    } else {
        const double m = params.y.mid();
        a.y = {params.y.lo(), m};
        b.y = {m, params.y.hi()};
    }
    first = with_params(a);
    second = with_params(b);
    return true;
}

void require_planar(const TrigPolynomial& poly) {
    if (poly.dim() != 2) {
        throw Error(ErrorCode::DimensionMismatch,
                    "certification needs a planar polynomial, got dim " + std::to_string(poly.dim()));
    }
}

namespace {

struct TermArgs {
    Interval weight;
    Interval offset;  // <origin, a>
    Interval k1;      // <e1, a>
    Interval k2;      // <e2, a>
};

std::vector<TermArgs> term_args(const TrigPolynomial& poly, const Frame& frame) {
    std::vector<TermArgs> out;
    out.reserve(static_cast<std::size_t>(poly.size()));
    for (Eigen::Index j = 0; j < poly.size(); ++j) {
        const Eigen::Vector2d a = poly.frequency(j);
        out.push_back({Interval::widened(poly.weight(j)), dot(frame.origin, a), dot(frame.e1, a), dot(frame.e2, a)});
    }
    return out;
}

Interval intersect(const Interval& a, const Interval& b) {
    return {std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

// sum_j w_j exp(i (offset_j + s k1_j + r k2_j)), term by term.
ComplexBox natural_form(const std::vector<TermArgs>& terms, const Box2& params) {
    Interval re(0.0);
    Interval im(0.0);
    for (const auto& t : terms) {
        const Interval arg = t.offset + params.x * t.k1 + params.y * t.k2;
        re += t.weight * range_cos(arg);
        im += t.weight * range_sin(arg);
    }
    return {re, im};
}

// Terms sharing the frequency of one parameter are summed first, so
// cancellation among their coefficients is seen before the parameter is
// widened:  sum_g (A_g + i B_g) exp(i s k_g).
template <typename Key, typename Rest>
std::optional<ComplexBox> grouped_form(const std::vector<TermArgs>& terms, const Interval& s, Key key, Rest rest) {
    struct Group {
        Interval k;
        Interval a{0.0};
        Interval b{0.0};
    };
    std::vector<Group> groups;
    for (const auto& t : terms) {
        const Interval k = key(t);
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) { return g.k == k; });
        if (it == groups.end()) it = groups.insert(groups.end(), Group{k});
        const Interval inner = rest(t);
        it->a += t.weight * range_cos(inner);
        it->b += t.weight * range_sin(inner);
    }
    if (groups.size() == terms.size()) return std::nullopt;

    Interval re(0.0);
    Interval im(0.0);
    for (const auto& g : groups) {
        const Interval arg = s * g.k;
        const Interval c = range_cos(arg);
        const Interval sn = range_sin(arg);
        re += g.a * c - g.b * sn;
        im += g.a * sn + g.b * c;
    }
    return ComplexBox{re, im};
}

}  // namespace

ComplexBox enclose(const TrigPolynomial& poly, const Frame& frame, const Box2& params) {
    require_planar(poly);
    const auto terms = term_args(poly, frame);
    ComplexBox out = natural_form(terms, params);

    const auto by_first = grouped_form(
        terms, params.x, [](const TermArgs& t) { return t.k1; },
        [&](const TermArgs& t) { return t.offset + params.y * t.k2; });
    const auto by_second = grouped_form(
        terms, params.y, [](const TermArgs& t) { return t.k2; },
        [&](const TermArgs& t) { return t.offset + params.x * t.k1; });
    for (const auto& form : {by_first, by_second}) {
        if (!form) continue;
        out.re = intersect(out.re, form->re);
        out.im = intersect(out.im, form->im);
    }
    return out;
}

ComplexBox enclose(const TrigPolynomial& poly, const Patch& patch) { return enclose(poly, patch.frame, patch.params); }

ComplexBox enclose(const TrigPolynomial& poly, const Box2& box) { return enclose(poly, Patch::box(box)); }

std::string_view to_string(Component c) { return c == Component::Re ? "re" : "im"; }

std::string_view to_string(Direction d) { return d == Direction::Below ? "below" : "above"; }

namespace {

bool refuted(const Interval& enc, Direction d, double threshold) {
    return d == Direction::Below ? enc.lo() >= threshold : enc.hi() <= threshold;
}

class SignSearch {
public:
    SignSearch(const TrigPolynomial& poly, Component target, double threshold, Direction direction, int max_depth)
        : poly_(poly), target_(target), threshold_(threshold), direction_(direction), max_depth_(max_depth) {}

    bool run(std::size_t piece, const Patch& patch, int depth) {
        const Interval enc = component(enclose(poly_, patch), target_);
        if (satisfies(enc, direction_, threshold_)) {
            leaves_.push_back({piece, patch.params, enc});
            depth_used_ = std::max(depth_used_, depth);
            return true;
        }
        if (refuted(enc, direction_, threshold_)) return fail(patch, "enclosure lies on the wrong side");

        const Box2 centre{Interval(patch.params.x.mid()), Interval(patch.params.y.mid())};
        if (refuted(component(enclose(poly_, patch.with_params(centre)), target_), direction_, threshold_)) {
            return fail(patch.with_params(centre), "violated at a point");
        }

        Patch first;
        Patch second;
        if (depth >= max_depth_ || !patch.bisect(first, second)) return fail(patch, "depth exhausted");
        return run(piece, first, depth + 1) && run(piece, second, depth + 1);
    }

    std::vector<SignCertificate::Leaf> leaves_;
    int depth_used_ = 0;
    std::string reason_;

private:
    bool fail(const Patch& where, std::string_view why) {
        const Eigen::Vector2d p = where.frame.point(where.params.x.mid(), where.params.y.mid());
        std::ostringstream os;
        os.precision(17);
        os << to_string(target_) << ' ' << (direction_ == Direction::Below ? "< " : "> ") << threshold_ << ": "
           << why << " near (" << p.x() << ", " << p.y() << ")";
        reason_ = os.str();
        return false;
    }

    const TrigPolynomial& poly_;
    Component target_;
    double threshold_;
    Direction direction_;
    int max_depth_;
};

class Replay {
public:
    explicit Replay(const SignCertificate& cert) : cert_(cert) {}

    bool run(std::size_t piece, const Patch& patch, int depth) {
        if (next_ >= cert_.leaves.size()) return false;
        const auto& leaf = cert_.leaves[next_];
        if (leaf.piece != piece || !patch.params.contains(leaf.params)) return false;
        if (leaf.params == patch.params) {
            ++next_;
            const Interval enc = component(enclose(cert_.poly, patch), cert_.target);
            return satisfies(enc, cert_.direction, cert_.threshold);
        }
        Patch first;
        Patch second;
        if (depth >= kMaxReplayDepth || !patch.bisect(first, second)) return false;
        return run(piece, first, depth + 1) && run(piece, second, depth + 1);
    }

    bool exhausted() const { return next_ == cert_.leaves.size(); }

private:
    static constexpr int kMaxReplayDepth = 200;
    const SignCertificate& cert_;
    std::size_t next_ = 0;
};

double modulus_bound(const TrigPolynomial& poly, const Patch& patch, int depth) {
    const double own = enclose(poly, patch).abs_lower_bound();
    Patch first;
    Patch second;
    if (depth <= 0 || !patch.bisect(first, second)) return own;
    return std::max(own, std::min(modulus_bound(poly, first, depth - 1), modulus_bound(poly, second, depth - 1)));
}

}  // namespace

Outcome<SignCertificate> certify_sign(const TrigPolynomial& poly, Component target, std::vector<Patch> pieces,
                                      double threshold, Direction direction, int max_depth) {
    require_planar(poly);
    if (!std::isfinite(threshold) || max_depth < 0) {
        throw Error(ErrorCode::InvalidArgument, "threshold must be finite and max_depth non-negative");
    }
    SignSearch search(poly, target, threshold, direction, max_depth);
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        if (!search.run(k, pieces[k], 0)) return Inconclusive{search.reason_};
    }
    return SignCertificate{poly, target, direction, threshold, std::move(pieces), std::move(search.leaves_),
                           search.depth_used_};
}

bool recheck(const SignCertificate& cert) {
    if (cert.poly.dim() != 2 || !std::isfinite(cert.threshold)) return false;
    Replay replay(cert);
    for (std::size_t k = 0; k < cert.pieces.size(); ++k) {
        if (!replay.run(k, cert.pieces[k], 0)) return false;
    }
    return replay.exhausted();
}

double modulus_lower_bound(const TrigPolynomial& poly, const Box2& box, int max_depth) {
    require_planar(poly);
    return modulus_bound(poly, Patch::box(box), max_depth);
}

}  // namespace rz
