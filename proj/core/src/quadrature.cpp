#include "primecouple/quadrature.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace primecouple {

namespace {

// 15-point Kronrod nodes on [-1, 1] (absolute values) with Kronrod and
// embedded 7-point Gauss weights
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                            0.741531185599394, 0.586087235467691, 0.405845151377397,
                            0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                            0.140653259715525, 0.169004726639267, 0.190350578064785,
                            0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

struct Piece {
    double a, b, value, err;
    bool operator<(const Piece& o) const { return err < o.err; }
};

Piece eval_piece(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        double fl = f(c - h * kXgk[j]);
        double fr = f(c + h * kXgk[j]);
        resk += kWgk[j] * (fl + fr);
        if (j % 2 == 1) resg += kWg[j / 2] * (fl + fr);
    }
    return {a, b, resk * h, std::fabs((resk - resg) * h)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
    if (!(b > a)) throw std::invalid_argument("integrate: need b > a");
    std::priority_queue<Piece> queue;
    queue.push(eval_piece(f, a, b));
    double total = queue.top().value, err = queue.top().err;
    int used = 1;
    while (err > spec.abs_tol && err > spec.rel_tol * std::fabs(total) &&
           used < spec.max_subdivisions) {
        Piece worst = queue.top();
        queue.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval at double resolution
            queue.push(worst);
            break;
        }
        Piece left = eval_piece(f, worst.a, mid);
        Piece right = eval_piece(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
        ++used;
    }
    // refresh the error sum to avoid drift from cancellation
    double fresh_err = 0, fresh_val = 0;
    while (!queue.empty()) {
        fresh_err += queue.top().err;
        fresh_val += queue.top().value;
        queue.pop();
    }
    return {fresh_val, fresh_err, used};
}

}  // namespace primecouple
