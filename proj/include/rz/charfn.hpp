#pragma once

// Finite discrete distributions on R^d and their characteristic functions.

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "rz/error.hpp"

namespace rz {

/// Finitely many atoms in R^dim with positive weights summing to one.
/// Atoms are the columns of atoms().
class DiscreteDistribution {
public:
    int dim() const { return static_cast<int>(atoms_.rows()); }
    Eigen::Index size() const { return atoms_.cols(); }
    const Eigen::MatrixXd& atoms() const { return atoms_; }
    const Eigen::VectorXd& weights() const { return weights_; }

private:
    friend DiscreteDistribution make_distribution(int, const std::vector<Eigen::VectorXd>&,
                                                  const std::vector<double>&);
    DiscreteDistribution(Eigen::MatrixXd atoms, Eigen::VectorXd weights)
        : atoms_(std::move(atoms)), weights_(std::move(weights)) {}

    Eigen::MatrixXd atoms_;
    Eigen::VectorXd weights_;
};

/// t -> sum_j w_j exp(i <t, a_j>). Frequencies are the columns of
/// frequencies(). Weights may be any real numbers.
class TrigPolynomial {
public:
    TrigPolynomial(Eigen::VectorXd weights, Eigen::MatrixXd frequencies);

    int dim() const { return static_cast<int>(frequencies_.rows()); }
    Eigen::Index size() const { return frequencies_.cols(); }
    const Eigen::VectorXd& weights() const { return weights_; }
    const Eigen::MatrixXd& frequencies() const { return frequencies_; }

    double weight(Eigen::Index j) const { return weights_(j); }
    auto frequency(Eigen::Index j) const { return frequencies_.col(j); }

    /// sum_j |w_j|; an upper bound on the sup norm.
    double abs_weight_sum() const { return weights_.cwiseAbs().sum(); }

    /// sum_j |w_j| * |a_j|_2, a Lipschitz constant w.r.t. the Euclidean norm.
    double lipschitz_bound() const;

    /// The constant function c in the given dimension.
    static TrigPolynomial constant(int dim, double c = 1.0);

private:
    Eigen::VectorXd weights_;
    Eigen::MatrixXd frequencies_;
};

/// Parses a decimal literal or an exact rational "p/q".
double parse_weight(std::string_view text);

DiscreteDistribution make_distribution(int dim, const std::vector<Eigen::VectorXd>& atoms,
                                       const std::vector<double>& weights);

DiscreteDistribution make_distribution(int dim, const std::vector<Eigen::VectorXd>& atoms,
                                       const std::vector<std::string_view>& weights);

TrigPolynomial char_poly(const DiscreteDistribution& dist);

std::complex<double> eval_point(const TrigPolynomial& poly, const Eigen::Ref<const Eigen::VectorXd>& t);

/// Places each atom's coordinates at the 1-based `slots` of R^target_dim,
/// zero elsewhere.
DiscreteDistribution embed(const DiscreteDistribution& dist, int target_dim, const std::vector<int>& slots);

/// Pointwise product; equal frequencies are merged in first-seen order.
TrigPolynomial multiply(const TrigPolynomial& p, const TrigPolynomial& q);

/// 1/3 (delta_(0,1) + delta_(1,0) + delta_(1,1)) on R^2.
DiscreteDistribution triangle_distribution();

}  // namespace rz
