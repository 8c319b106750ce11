#pragma once

// Zero isolation by branch-and-prune, certified winding numbers along closed
// piecewise-affine loops, and sign constraints along polygonal paths.

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "rz/enclose.hpp"

namespace rz {

/// Polygonal path. The parameter t in [0, 1] is split evenly between the
/// segments, each of which is traversed at constant speed.
class PolyPath {
public:
    PolyPath(std::vector<Eigen::Vector2d> vertices, bool closed);

    /// Counterclockwise boundary of a box, starting at its lower-left corner.
    static PolyPath boundary(const Box2& box);

    const std::vector<Eigen::Vector2d>& vertices() const { return vertices_; }
    bool closed() const { return closed_; }
    std::size_t segment_count() const { return closed_ ? vertices_.size() : vertices_.size() - 1; }
    Patch segment(std::size_t k) const;
    Eigen::Vector2d point(double t) const;

private:
    std::vector<Eigen::Vector2d> vertices_;
    bool closed_;
};

/// One oriented piece of a closed loop: s in [0, 1] moves linearly from
/// parameter point `from` to `to` of the frame.
struct LoopPiece {
    Frame frame;
    Eigen::Vector2d from;
    Eigen::Vector2d to;

    Box2 params(const Interval& s) const;
};

std::vector<LoopPiece> loop_pieces(const PolyPath& path);

struct WindingCertificate {
    struct Arc {
        std::size_t piece;
        Interval param;
        ComplexBox enclosure;
        double witness;  // angle of a direction the whole enclosure lies within pi/4 of
    };

    TrigPolynomial poly;
    std::vector<LoopPiece> loop;
    int winding = 0;
    double modulus_floor = 0;
    std::vector<Arc> arcs;
};

/// Counterclockwise loops count positively.
Outcome<WindingCertificate> winding_number(const TrigPolynomial& poly, std::vector<LoopPiece> loop, int max_depth);
Outcome<WindingCertificate> winding_number(const TrigPolynomial& poly, const PolyPath& path, int max_depth);

bool recheck(const WindingCertificate& cert);

struct ZeroCluster {
    Box2 hull;
    std::size_t boxes;
};

inline constexpr std::size_t kDefaultZeroBudget = 100000;

/// Every zero of the polynomial in the box lies in one of the returned
/// clusters; a cluster is not guaranteed to contain a zero.
std::vector<ZeroCluster> zero_search(const TrigPolynomial& poly, const Box2& box, double tol,
                                     std::size_t max_boxes = kDefaultZeroBudget);

struct PathConstraint {
    Interval range;
    Component target;
    double threshold;
    Direction direction;
};

Outcome<std::vector<SignCertificate>> verify_path_constraints(const TrigPolynomial& poly, const PolyPath& path,
                                                              const std::vector<PathConstraint>& constraints,
                                                              int max_depth);

}  // namespace rz
