#include "spinorsurf/spinalgebra.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

namespace spinorsurf {

namespace {

// Re tr(A* B) / 2 equals the quaternion dot product of two SU(2) elements.
double lift_overlap(const SpinMatrixd& a, const SpinMatrixd& b) { return 0.5 * (a.adjoint() * b).trace().real(); }

}  // namespace

SpinLiftField su2_lift_grid(const std::vector<Eigen::Matrix3d>& rotations, int nu, int nv, bool periodic_u,
                            bool periodic_v, int base) {
    const int n = nu * nv;
    if (nu <= 0 || nv <= 0 || static_cast<int>(rotations.size()) != n)
        throw InvalidArgument("su2_lift_grid: rotation field does not match grid");
    if (base < 0 || base >= n) throw InvalidArgument("su2_lift_grid: base node out of range");

    const double max_angle = std::numbers::pi / 2;
    auto check_pair = [&](int a, int b) {
        const double angle = rotation_angle(rotations[a], rotations[b]);
        if (!(angle < max_angle)) {
            std::ostringstream os;
            os << "neighbouring frames at nodes " << a << " and " << b << " differ by " << angle
               << " rad (grid too coarse)";
            throw LiftAmbiguity(os.str());
        }
    };

    SpinLiftField out;
    out.lifts.assign(n, SpinMatrixd::Zero());
    std::vector<char> seen(n, 0);
    std::queue<int> queue;
    out.lifts[base] = spin_lift(rotations[base]);
    seen[base] = 1;
    queue.push(base);

    while (!queue.empty()) {
        const int node = queue.front();
        queue.pop();
        const int i = node % nu, j = node / nu;
        // row-major neighbour order: (i, j-1), (i-1, j), (i+1, j), (i, j+1)
        const int candidates[4][2] = {{i, j - 1}, {i - 1, j}, {i + 1, j}, {i, j + 1}};
        for (const auto& c : candidates) {
            if (c[0] < 0 || c[0] >= nu || c[1] < 0 || c[1] >= nv) continue;
            const int next = c[1] * nu + c[0];
            if (seen[next]) continue;
            check_pair(node, next);
            SpinMatrixd u = spin_lift(rotations[next]);
            if (lift_overlap(out.lifts[node], u) < 0) u = -u;
            out.lifts[next] = u;
            seen[next] = 1;
            queue.push(next);
        }
    }

    // Non-tree edges must agree with the propagated signs.
    for (int j = 0; j < nv; ++j) {
        for (int i = 0; i < nu; ++i) {
            const int a = j * nu + i;
            if (i + 1 < nu) {
                check_pair(a, a + 1);
                if (lift_overlap(out.lifts[a], out.lifts[a + 1]) < 0)
                    throw LiftAmbiguity("inconsistent lift signs inside the grid");
            }
            if (j + 1 < nv) {
                check_pair(a, a + nu);
                if (lift_overlap(out.lifts[a], out.lifts[a + nu]) < 0)
                    throw LiftAmbiguity("inconsistent lift signs inside the grid");
            }
        }
    }

    auto seam_sign = [&](int count, auto edge_pair) {
        double sign = 0;
        for (int k = 0; k < count; ++k) {
            const auto [a, b] = edge_pair(k);
            check_pair(a, b);
            const double s = lift_overlap(out.lifts[a], out.lifts[b]) < 0 ? -1.0 : 1.0;
            if (sign == 0) sign = s;
            if (s != sign) throw LiftAmbiguity("seam sign varies along a periodic edge");
        }
        return sign == 0 ? 1.0 : sign;
    };
    if (periodic_u) out.seam_u = seam_sign(nv, [&](int j) { return std::pair{j * nu + nu - 1, j * nu}; });
    if (periodic_v) out.seam_v = seam_sign(nu, [&](int i) { return std::pair{(nv - 1) * nu + i, i}; });
    return out;
}

}  // namespace spinorsurf
