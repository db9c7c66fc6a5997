#pragma once

#include <cmath>
#include <complex>

namespace critline {

// Neumaier-compensated accumulator.
class KahanSum {
  public:
    void add(double term) {
        const double t = sum_ + term;
        if (std::fabs(sum_) >= std::fabs(term))
            comp_ += (sum_ - t) + term;
        else
            comp_ += (term - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Componentwise compensated complex accumulator.
class KahanComplexSum {
  public:
    void add(std::complex<double> term) {
        re_.add(term.real());
        im_.add(term.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

  private:
    KahanSum re_;
    KahanSum im_;
};

} // namespace critline
