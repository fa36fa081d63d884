#pragma once

#include <string>
#include <vector>

#include "qht/derivatives.hpp"
#include "qht/grid.hpp"

namespace qht {

// Sum-of-products trig expressions over the torus coordinates, e.g.
//   "0.3*cos(x0_1) + 0.2*cos(x1_2) - 0.1"
// Coordinates are written xP_R with P in 0..3 and R in 1..n.
struct TrigFactor {
    int p = 0;      // quaternionic component index, 0..3
    int r = 0;      // coordinate index, 0-based internally
    bool is_sin = false;
};

struct TrigTerm {
    double coeff = 0.0;
    std::vector<TrigFactor> factors; // empty = constant term
};

class TrigExpr {
public:
    static TrigExpr parse(const std::string& text, int n);

    double eval(const std::vector<double>& x) const; // x indexed by axis p*n+r
    ScalarField realize(const TorusGrid& g) const;
    std::string to_string() const;

    int n() const { return n_; }
    const std::vector<TrigTerm>& terms() const { return terms_; }

private:
    int n_ = 0;
    std::vector<TrigTerm> terms_;
};

} // namespace qht
