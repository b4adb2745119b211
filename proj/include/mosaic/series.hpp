#pragma once

#include <stdexcept>
#include <vector>

#include "mosaic/rational.hpp"

namespace mosaic::series {

// Truncated power series over Q; coeff(i) is the coefficient of t^i,
// kept for 0 <= i <= order.
class Series {
public:
    explicit Series(int order) : c_(order + 1, Rational(0)) {}

    int order() const { return (int)c_.size() - 1; }
    const Rational& coeff(int i) const { return c_.at(i); }
    void set(int i, const Rational& v) { c_.at(i) = v; }

    static Series t(int order) {
        Series s(order);
        if (order >= 1) s.set(1, 1);
        return s;
    }

    Series operator+(const Series& o) const {
        Series r(order());
        for (int i = 0; i <= order(); ++i) r.c_[i] = c_[i] + o.coeff(i);
        return r;
    }

    Series operator-(const Series& o) const {
        Series r(order());
        for (int i = 0; i <= order(); ++i) r.c_[i] = c_[i] - o.coeff(i);
        return r;
    }

    Series operator*(const Series& o) const {
        Series r(order());
        for (int i = 0; i <= order(); ++i) {
            if (is_zero(c_[i])) continue;
            for (int j = 0; i + j <= order(); ++j)
                r.c_[i + j] += c_[i] * o.coeff(j);
        }
        return r;
    }

    bool operator==(const Series& o) const { return c_ == o.c_; }

    // this(g(t)) for g with g(0) = 0.
    Series compose(const Series& g) const {
        if (!is_zero(g.coeff(0)))
            throw std::invalid_argument("compose: inner series must vanish at 0");
        Series r(order());
        r.set(0, c_[0]);
        Series power(order());
        power.set(0, 1);
        for (int k = 1; k <= order(); ++k) {
            power = power * g;
            for (int i = 0; i <= order(); ++i) r.c_[i] += c_[k] * power.coeff(i);
        }
        return r;
    }

    // Compositional inverse of f with f(0)=0, f'(0) != 0: g with f(g)=t.
    Series compositional_inverse() const {
        if (!is_zero(c_[0]) || is_zero(c_[1]))
            throw std::invalid_argument("compositional inverse needs f = c1*t + ...");
        Series g(order());
        g.set(1, 1 / c_[1]);
        for (int n = 2; n <= order(); ++n) {
            // match coefficient of t^n in f(g) to zero
            Series trunc = *this;
            Rational residual = trunc.compose(g).coeff(n);
            g.set(n, -residual / c_[1]);
        }
        return g;
    }

private:
    std::vector<Rational> c_;
};

inline Series exp_series(const Series& f) {
    if (!is_zero(f.coeff(0)))
        throw std::invalid_argument("exp_series: argument must vanish at 0");
    int n = f.order();
    Series r(n), power(n);
    power.set(0, 1);
    r.set(0, 1);
    Rational fact = 1;
    for (int m = 1; m <= n; ++m) {
        power = power * f;
        fact *= m;
        for (int i = 0; i <= n; ++i) r.set(i, r.coeff(i) + power.coeff(i) / fact);
    }
    return r;
}

inline Series sinh_series(int order) {
    Series s(order);
    Rational fact = 1;
    for (int k = 1; k <= order; ++k) {
        fact *= k;
        if (k % 2 == 1) s.set(k, 1 / fact);
    }
    return s;
}

// arcsin(t) = sum_k binom(2k,k)/(4^k (2k+1)) t^(2k+1)
inline Series arcsin_series(int order) {
    Series s(order);
    Rational c = 1;  // binom(2k,k)/4^k
    for (int k = 0; 2 * k + 1 <= order; ++k) {
        s.set(2 * k + 1, c / (2 * k + 1));
        c *= Rational(2 * k + 1, 2 * k + 2);
    }
    return s;
}

// arcsinh(t): same coefficients with alternating signs.
inline Series arcsinh_series(int order) {
    Series s = arcsin_series(order);
    for (int k = 0; 2 * k + 1 <= order; ++k)
        if (k % 2 == 1) s.set(2 * k + 1, -s.coeff(2 * k + 1));
    return s;
}

// -ln(1-t) = sum t^k / k
inline Series neg_log_one_minus(int order) {
    Series s(order);
    for (int k = 1; k <= order; ++k) s.set(k, Rational(1, k));
    return s;
}

// Two-variable truncated series; coeff(i,j) multiplies t^i z^j.
class BiSeries {
public:
    BiSeries(int t_order, int z_order)
        : t_order_(t_order), z_order_(z_order),
          c_(t_order + 1, std::vector<Rational>(z_order + 1, Rational(0))) {}

    int t_order() const { return t_order_; }
    int z_order() const { return z_order_; }
    const Rational& coeff(int i, int j) const { return c_.at(i).at(j); }
    void set(int i, int j, const Rational& v) { c_.at(i).at(j) = v; }

    BiSeries operator*(const BiSeries& o) const {
        BiSeries r(t_order_, z_order_);
        for (int i = 0; i <= t_order_; ++i)
            for (int j = 0; j <= z_order_; ++j) {
                if (is_zero(c_[i][j])) continue;
                for (int a = 0; i + a <= t_order_; ++a)
                    for (int b = 0; j + b <= z_order_; ++b)
                        r.c_[i + a][j + b] += c_[i][j] * o.coeff(a, b);
            }
        return r;
    }

    std::vector<Rational> t_coefficient(int i) const { return c_.at(i); }

private:
    int t_order_, z_order_;
    std::vector<std::vector<Rational>> c_;
};

inline BiSeries exp_biseries(const BiSeries& f) {
    for (int j = 0; j <= f.z_order(); ++j)
        if (!is_zero(f.coeff(0, j)))
            throw std::invalid_argument("exp_biseries: argument must vanish at t=0");
    BiSeries r(f.t_order(), f.z_order()), power(f.t_order(), f.z_order());
    r.set(0, 0, 1);
    power.set(0, 0, 1);
    Rational fact = 1;
    for (int m = 1; m <= f.t_order(); ++m) {
        power = power * f;
        fact *= m;
        for (int i = 0; i <= f.t_order(); ++i)
            for (int j = 0; j <= f.z_order(); ++j)
                r.set(i, j, r.coeff(i, j) + power.coeff(i, j) / fact);
    }
    return r;
}

// arcsin(t sqrt(z)) / sqrt(z) as an honest polynomial-in-z series:
// the odd series in t pairs each t^(2k+1) with z^k.
inline BiSeries arcsin_scaled(int t_order, int z_order) {
    BiSeries s(t_order, z_order);
    Series a = arcsin_series(t_order);
    for (int k = 0; 2 * k + 1 <= t_order && k <= z_order; ++k)
        s.set(2 * k + 1, k, a.coeff(2 * k + 1));
    return s;
}

// dim Lie_odd(2k+1) for odd arities up to max_n. The printed closed form
// (2k-1)!!/((2k)!!(2k+1)) are the arcsin coefficients; the arcsinh signs
// record homological degree and drop out of dimensions.
inline std::vector<std::pair<int, Int>> lie_odd_dims(int max_n) {
    if (max_n % 2 == 0 || max_n > 9)
        throw std::invalid_argument("lie_odd_dims: max_n must be odd and <= 9");
    Series a = arcsin_series(max_n);
    Series ah = arcsinh_series(max_n);
    std::vector<std::pair<int, Int>> out;
    for (int n = 1; n <= max_n; n += 2) {
        Rational d = a.coeff(n) * Rational(factorial(n));
        Rational dh = ah.coeff(n) * Rational(factorial(n));
        if (d.get_den() != 1 || abs(dh) != d)
            throw std::logic_error("lie_odd_dims: non-integral dimension");
        out.emplace_back(n, d.get_num());
    }
    return out;
}

// prod_{1 <= k < n/2} (1 + (n-2k)^2 z), coefficients of z^0, z^1, ...
inline std::vector<Int> poincare_polynomial(int n) {
    if (n < 2) throw std::invalid_argument("poincare_polynomial: n >= 2");
    std::vector<Int> p{1};
    for (int k = 1; 2 * k < n; ++k) {
        long w = (long)(n - 2 * k) * (n - 2 * k);
        std::vector<Int> q(p.size() + 1, Int(0));
        for (size_t i = 0; i < p.size(); ++i) {
            q[i] += p[i];
            q[i + 1] += p[i] * w;
        }
        p = std::move(q);
    }
    return p;
}

inline Int pois_odd_total_dim(int n) {
    Int total = 0;
    for (auto& c : poincare_polynomial(n)) total += c;
    return total;
}

// Coherence of the closed formulas:
//  (a) n! [t^n] exp(arcsin(t sqrt z)/sqrt z) equals the product formula;
//  (b) sinh(arcsinh(t)) = t to the truncation order;
//  (c) sinh(-ln(1-t)) = t + sum_{n>=2} t^n/2.
inline bool egf_cross_check(int max_n) {
    if (max_n > 8) throw std::invalid_argument("egf_cross_check: max_n <= 8");
    int z_order = max_n / 2;
    BiSeries egf = exp_biseries(arcsin_scaled(max_n, z_order));
    for (int n = 2; n <= max_n; ++n) {
        auto prod = poincare_polynomial(n);
        Rational fact(factorial(n));
        for (int j = 0; j <= z_order; ++j) {
            Rational lhs = egf.coeff(n, j) * fact;
            Rational rhs = (j < (int)prod.size()) ? Rational(prod[j]) : Rational(0);
            if (lhs != rhs) return false;
        }
    }
    int ord = std::max(8, max_n);
    if (!(sinh_series(ord).compose(arcsinh_series(ord)) == Series::t(ord))) return false;
    Series pois_inv = sinh_series(ord).compose(neg_log_one_minus(ord));
    if (pois_inv.coeff(1) != 1) return false;
    for (int n = 2; n <= ord; ++n)
        if (pois_inv.coeff(n) != Rational(1, 2)) return false;
    return true;
}

}  // namespace mosaic::series
