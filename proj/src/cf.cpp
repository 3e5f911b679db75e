#include "cfes/cf.hpp"

#include <stdexcept>

namespace cfes {

namespace {

void check_digit(const mpz_class& d) {
    if (d < 1) throw std::domain_error("digit string: digits must be >= 1");
}

}  // namespace

DigitString::DigitString(std::vector<mpz_class> digits) : d_(std::move(digits)) {
    for (const auto& d : d_) check_digit(d);
}

DigitString DigitString::parse(std::string_view csv) {
    DigitString s;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t comma = csv.find(',', pos);
        if (comma == std::string_view::npos) comma = csv.size();
        std::string tok(csv.substr(pos, comma - pos));
        mpz_class d;
        if (tok.empty() || mpz_set_str(d.get_mpz_t(), tok.c_str(), 10) != 0)
            throw std::domain_error("digit string: cannot parse '" + std::string(csv) + "'");
        s.push_back(std::move(d));
        pos = comma + 1;
    }
    return s;
}

void DigitString::push_back(mpz_class digit) {
    check_digit(digit);
    d_.push_back(std::move(digit));
}

DigitString DigitString::with_appended(mpz_class digit) const {
    DigitString out = *this;
    out.push_back(std::move(digit));
    return out;
}

std::string DigitString::str() const {
    std::string out;
    for (size_t i = 0; i < d_.size(); ++i) {
        if (i) out += ',';
        out += d_[i].get_str();
    }
    return out;
}

Rational ConvergentTable::value_at(long k) const {
    if (k < 0 || static_cast<size_t>(k) > levels())
        throw std::domain_error("convergent table: index out of range");
    return make_rational(p_at(k), q_at(k));
}

mpz_class ConvergentTable::q_sum() const {
    mpz_class s = 0;
    for (size_t i = 1; i < q.size(); ++i) s += q[i];
    return s;
}

ConvergentTable convergent_table(const DigitString& sigma) {
    ConvergentTable t;
    t.p.reserve(sigma.size() + 2);
    t.q.reserve(sigma.size() + 2);
    t.p = {1, 0};  // k = -1, 0
    t.q = {0, 1};
    for (const auto& d : sigma) {
        mpz_class np = d * t.p[t.p.size() - 1] + t.p[t.p.size() - 2];
        mpz_class nq = d * t.q[t.q.size() - 1] + t.q[t.q.size() - 2];
        t.p.push_back(std::move(np));
        t.q.push_back(std::move(nq));
    }
    return t;
}

DigitString expand_rational(const Rational& x) {
    if (!in_unit_interval(x)) throw std::domain_error("expand: x must lie in [0,1)");
    DigitString out;
    // Gauss map on p/q: digit = floor(q/p), next value = (q mod p)/p.
    mpz_class num = x.get_num(), den = x.get_den();
    while (num != 0) {
        mpz_class d, r;
        mpz_fdiv_qr(d.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t(), num.get_mpz_t());
        out.push_back(std::move(d));
        den = num;
        num = std::move(r);
    }
    return out;
}

Rational phi(const DigitString& sigma) {
    ConvergentTable t = convergent_table(sigma);
    return t.value_at(static_cast<long>(t.levels()));
}

Rational phi_k(const DigitString& sigma, long k) {
    if (k < 0 || static_cast<size_t>(k) > sigma.size())
        throw std::domain_error("phi_k: k out of range");
    return convergent_table(sigma).value_at(k);
}

bool is_realizable(const DigitString& sigma) {
    return sigma.empty() || sigma.last() > 1;
}

DigitString sibling(const DigitString& sigma) {
    if (sigma.empty()) throw std::domain_error("sibling: empty string has no partner");
    std::vector<mpz_class> d(sigma.begin(), sigma.end());
    if (sigma.last() > 1) {
        d.back() -= 1;
        d.emplace_back(1);
    } else {
        if (sigma.size() == 1)
            throw std::domain_error("sibling: (1) has no partner inside the digit alphabet");
        d.pop_back();
        d.back() += 1;
    }
    return DigitString(std::move(d));
}

DigitString increment_last(const DigitString& sigma) {
    if (sigma.empty()) throw std::domain_error("increment_last: empty string");
    std::vector<mpz_class> d(sigma.begin(), sigma.end());
    d.back() += 1;
    return DigitString(std::move(d));
}

std::vector<DigitString> expansions_of(const Rational& x) {
    if (!in_unit_interval(x)) throw std::domain_error("expansions_of: x must lie in [0,1)");
    DigitString f = expand_rational(x);
    if (f.empty()) return {f};
    std::vector<DigitString> out;
    out.push_back(f);
    out.push_back(sibling(f));
    return out;
}

DigitPrefix digits_prefix_of_real(const RealInterval& x, size_t count) {
    if (count == 0) throw std::domain_error("digits_prefix_of_real: count must be positive");
    mpfr_prec_t wp = std::max(x.lo.prec(), x.hi.prec()) + 64;
    BigFloat lo(wp), hi(wp);
    mpfr_set(lo.get(), x.lo.get(), MPFR_RNDD);
    mpfr_set(hi.get(), x.hi.get(), MPFR_RNDU);
    if (lo.sign() < 0 || mpfr_cmp_ui(hi.get(), 1) >= 0)
        throw std::domain_error("digits_prefix_of_real: interval must lie in [0,1)");

    DigitPrefix out;
    BigFloat inv_lo(wp), inv_hi(wp);
    mpz_class dl, dh;
    for (size_t i = 0; i < count; ++i) {
        if (lo.is_zero() && hi.is_zero()) {
            out.status = DigitStatus::terminated;
            return out;
        }
        if (lo.sign() <= 0) {  // straddles zero: digit vs termination undecidable
            out.status = DigitStatus::out_of_precision;
            return out;
        }
        // 1/x is decreasing: [1/hi, 1/lo] with outward rounding
        mpfr_ui_div(inv_lo.get(), 1, hi.get(), MPFR_RNDD);
        mpfr_ui_div(inv_hi.get(), 1, lo.get(), MPFR_RNDU);
        mpfr_get_z(dl.get_mpz_t(), inv_lo.get(), MPFR_RNDD);
        mpfr_get_z(dh.get_mpz_t(), inv_hi.get(), MPFR_RNDD);
        if (dl != dh) {
            out.status = DigitStatus::out_of_precision;
            return out;
        }
        out.digits.push_back(dl);
        // T(x) = 1/x - d, decreasing in x
        mpfr_sub_z(lo.get(), inv_lo.get(), dl.get_mpz_t(), MPFR_RNDD);
        mpfr_sub_z(hi.get(), inv_hi.get(), dl.get_mpz_t(), MPFR_RNDU);
        // the true image lies in [0,1); outward rounding may poke past it
        if (lo.sign() < 0) mpfr_set_zero(lo.get(), 1);
        if (mpfr_cmp_ui(hi.get(), 1) > 0) mpfr_set_ui(hi.get(), 1, MPFR_RNDN);
    }
    out.status = DigitStatus::complete;
    return out;
}

}  // namespace cfes
