#pragma once

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace ufalab {

/// Value-semantic wrapper around mpfr_t at a fixed working precision.
/// Just the operations the log-space size accounting needs.
class BigFloat {
public:
    static constexpr mpfr_prec_t kPrecision = 256;

    BigFloat() { mpfr_init2(value_, kPrecision); mpfr_set_ui(value_, 0, MPFR_RNDN); }
    explicit BigFloat(long v) { mpfr_init2(value_, kPrecision); mpfr_set_si(value_, v, MPFR_RNDN); }
    explicit BigFloat(double v) { mpfr_init2(value_, kPrecision); mpfr_set_d(value_, v, MPFR_RNDN); }
    explicit BigFloat(const mpz_class& v) {
        mpfr_init2(value_, kPrecision);
        mpfr_set_z(value_, v.get_mpz_t(), MPFR_RNDN);
    }

    BigFloat(const BigFloat& other) {
        mpfr_init2(value_, kPrecision);
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& other) noexcept {
        mpfr_init2(value_, kPrecision);
        mpfr_swap(value_, other.value_);
    }
    BigFloat& operator=(BigFloat other) noexcept {
        mpfr_swap(value_, other.value_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(value_); }

    /// 2^exponent, exact.
    static BigFloat power_of_two(long exponent) {
        BigFloat out;
        mpfr_set_ui_2exp(out.value_, 1, exponent, MPFR_RNDN);
        return out;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat out;
        mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
        return out;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat out;
        mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
        return out;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat out;
        mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
        return out;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat out;
        mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
        return out;
    }
    friend BigFloat operator*(const mpz_class& a, const BigFloat& b) {
        BigFloat out;
        mpfr_mul_z(out.value_, b.value_, a.get_mpz_t(), MPFR_RNDN);
        return out;
    }

    friend BigFloat log(const BigFloat& x) {
        BigFloat out;
        mpfr_log(out.value_, x.value_, MPFR_RNDN);
        return out;
    }

    friend bool operator<(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.value_, b.value_) < 0;
    }
    friend bool operator>(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.value_, b.value_) > 0;
    }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.value_, b.value_) <= 0;
    }

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

    /// Scientific notation with a fixed digit count; stable across runs.
    std::string str(int significant_digits = 30) const;

private:
    mpfr_t value_;
};

inline BigFloat log_of_mpz(const mpz_class& x) { return log(BigFloat(x)); }

}  // namespace ufalab
