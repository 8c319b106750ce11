#include "rz/charfn.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <string>

namespace rz {

namespace {

constexpr double kWeightSumTolerance = 1e-12;

void require_dim(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

double parse_number(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw Error(ErrorCode::ParseError, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

TrigPolynomial::TrigPolynomial(Eigen::VectorXd weights, Eigen::MatrixXd frequencies)
    : weights_(std::move(weights)), frequencies_(std::move(frequencies)) {
    require_dim(weights_.size() == frequencies_.cols(), "weight count differs from frequency count");
    require_dim(frequencies_.rows() >= 1, "dimension must be at least 1");
    if (!weights_.allFinite() || !frequencies_.allFinite()) {
        throw Error(ErrorCode::InvalidArgument, "polynomial coefficients must be finite");
    }
}

double TrigPolynomial::lipschitz_bound() const {
    return (weights_.cwiseAbs().array() * frequencies_.colwise().norm().transpose().array()).sum();
}

TrigPolynomial TrigPolynomial::constant(int dim, double c) {
    require_dim(dim >= 1, "dimension must be at least 1");
    return {Eigen::VectorXd::Constant(1, c), Eigen::MatrixXd::Zero(dim, 1)};
}

double parse_weight(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_number(text);
    const double p = parse_number(text.substr(0, slash));
    const double q = parse_number(text.substr(slash + 1));
    // Integers below 2^53 are exact, so p / q is correctly rounded.
    if (p != std::trunc(p) || q != std::trunc(q) || std::abs(p) > 0x1p53 || std::abs(q) > 0x1p53) {
        throw Error(ErrorCode::ParseError, "rational weight needs integer parts: '" + std::string(text) + "'");
    }
    if (q == 0) throw Error(ErrorCode::ParseError, "zero denominator: '" + std::string(text) + "'");
    return p / q;
}

DiscreteDistribution make_distribution(int dim, const std::vector<Eigen::VectorXd>& atoms,
                                       const std::vector<double>& weights) {
    require_dim(dim >= 1, "dimension must be at least 1");
    require_dim(!atoms.empty() && atoms.size() == weights.size(),
                "atoms and weights must be non-empty lists of equal length");

    const auto n = static_cast<Eigen::Index>(atoms.size());
    Eigen::MatrixXd a(dim, n);
    Eigen::VectorXd w(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto& atom = atoms[static_cast<std::size_t>(j)];
        require_dim(atom.size() == dim, "atom " + std::to_string(j) + " has " + std::to_string(atom.size()) +
                                            " coordinates, expected " + std::to_string(dim));
        if (!atom.allFinite()) throw Error(ErrorCode::InvalidArgument, "atom coordinates must be finite");
        a.col(j) = atom;
        w(j) = weights[static_cast<std::size_t>(j)];
        if (!(w(j) > 0) || !std::isfinite(w(j))) {
            throw Error(ErrorCode::NonPositiveWeight, "weight " + std::to_string(j) + " is not positive");
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (a.col(i) == a.col(j)) {
                throw Error(ErrorCode::DuplicateAtom,
                            "atoms " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
            }
        }
    }
    if (std::abs(w.sum() - 1.0) > kWeightSumTolerance) {
        throw Error(ErrorCode::WeightsDoNotSumToOne, "weights sum to " + std::to_string(w.sum()));
    }
    return DiscreteDistribution(std::move(a), std::move(w));
}

DiscreteDistribution make_distribution(int dim, const std::vector<Eigen::VectorXd>& atoms,
                                       const std::vector<std::string_view>& weights) {
    std::vector<double> parsed;
    parsed.reserve(weights.size());
    for (auto w : weights) parsed.push_back(parse_weight(w));
    return make_distribution(dim, atoms, parsed);
}

TrigPolynomial char_poly(const DiscreteDistribution& dist) {
    return {dist.weights(), dist.atoms()};
}

std::complex<double> eval_point(const TrigPolynomial& poly, const Eigen::Ref<const Eigen::VectorXd>& t) {
    require_dim(t.size() == poly.dim(), "point has " + std::to_string(t.size()) + " coordinates, polynomial has dim " +
                                            std::to_string(poly.dim()));
    const Eigen::ArrayXd phase = (poly.frequencies().transpose() * t).array();
    const Eigen::ArrayXd& w = poly.weights().array();
    return {(w * phase.cos()).sum(), (w * phase.sin()).sum()};
}

DiscreteDistribution embed(const DiscreteDistribution& dist, int target_dim, const std::vector<int>& slots) {
    require_dim(target_dim >= dist.dim(), "target dimension is smaller than the distribution's");
    if (static_cast<int>(slots.size()) != dist.dim()) {
        throw Error(ErrorCode::InvalidSlots, "need one slot per source coordinate");
    }
    std::vector<bool> used(static_cast<std::size_t>(target_dim), false);
    for (int s : slots) {
        if (s < 1 || s > target_dim || used[static_cast<std::size_t>(s - 1)]) {
            throw Error(ErrorCode::InvalidSlots, "slots must be distinct indices in [1, target_dim]");
        }
        used[static_cast<std::size_t>(s - 1)] = true;
    }

    std::vector<Eigen::VectorXd> atoms;
    std::vector<double> weights;
    for (Eigen::Index j = 0; j < dist.size(); ++j) {
        Eigen::VectorXd p = Eigen::VectorXd::Zero(target_dim);
        for (int k = 0; k < dist.dim(); ++k) p(slots[static_cast<std::size_t>(k)] - 1) = dist.atoms()(k, j);
        atoms.push_back(std::move(p));
        weights.push_back(dist.weights()(j));
    }
    return make_distribution(target_dim, atoms, weights);
}

TrigPolynomial multiply(const TrigPolynomial& p, const TrigPolynomial& q) {
    require_dim(p.dim() == q.dim(), "cannot multiply polynomials of different dimension");

    std::map<std::vector<double>, Eigen::Index> index;
    std::vector<Eigen::VectorXd> freqs;
    std::vector<double> weights;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        for (Eigen::Index j = 0; j < q.size(); ++j) {
            Eigen::VectorXd f = p.frequency(i) + q.frequency(j);
            // +0.0 normalises -0.0 so that the two compare as one key.
            for (auto& c : f) c += 0.0;
            std::vector<double> key(f.data(), f.data() + f.size());
            const double w = p.weight(i) * q.weight(j);
            auto [it, inserted] = index.try_emplace(std::move(key), static_cast<Eigen::Index>(freqs.size()));
            if (inserted) {
                freqs.push_back(std::move(f));
                weights.push_back(w);
            } else {
                weights[static_cast<std::size_t>(it->second)] += w;
            }
        }
    }

    Eigen::MatrixXd fm(p.dim(), static_cast<Eigen::Index>(freqs.size()));
    for (std::size_t k = 0; k < freqs.size(); ++k) fm.col(static_cast<Eigen::Index>(k)) = freqs[k];
    return {Eigen::Map<Eigen::VectorXd>(weights.data(), static_cast<Eigen::Index>(weights.size())), fm};
}

DiscreteDistribution triangle_distribution() {
    return make_distribution(2, {Eigen::Vector2d(0, 1), Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 1)},
                             std::vector<std::string_view>{"1/3", "1/3", "1/3"});
}

}  // namespace rz
