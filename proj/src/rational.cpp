#include "syncwalk/rational.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace syncwalk {

namespace {

bool is_integer_token(const std::string& s, bool allow_sign) {
  size_t i = 0;
  if (allow_sign && i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

Int pow10_int(size_t k) {
  Int r = 1;
  for (size_t i = 0; i < k; ++i) r *= 10;
  return r;
}

}  // namespace

std::string rat_to_string(const Rat& r) {
  return rat_num(r).str() + "/" + rat_den(r).str();
}

Rat rat_from_string(const std::string& raw) {
  const std::string s = trimmed(raw);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!is_integer_token(num, true) || !is_integer_token(den, false))
      throw std::invalid_argument("malformed rational literal: " + raw);
    Int d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + raw);
    return Rat(Int(num), d);
  }

  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot);
    const std::string fp = s.substr(dot + 1);
    bool negative = false;
    if (!ip.empty() && (ip[0] == '+' || ip[0] == '-')) {
      negative = (ip[0] == '-');
      ip = ip.substr(1);
    }
    if (ip.empty()) ip = "0";
    if (!is_integer_token(ip, false) || (!fp.empty() && !is_integer_token(fp, false)))
      throw std::invalid_argument("malformed decimal literal: " + raw);
    const Int scale = pow10_int(fp.size());
    Int n = Int(ip) * scale + (fp.empty() ? Int(0) : Int(fp));
    if (negative) n = -n;
    return Rat(n, scale);
  }

  if (!is_integer_token(s, true)) throw std::invalid_argument("malformed rational literal: " + raw);
  return Rat(Int(s));
}

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  if (x == 0.0) return Rat(0);
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));  // exact: 53-bit mantissa
  const int e2 = exp - 53;
  Rat r(scaled);
  if (e2 > 0) {
    r *= Rat(Int(1) << e2);
  } else if (e2 < 0) {
    r /= Rat(Int(1) << -e2);
  }
  return r;
}

Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

Rat best_rational(double x, long long max_den) {
  if (!(max_den >= 1)) throw std::invalid_argument("max_den must be positive");
  if (!std::isfinite(x) || x < 0) throw std::invalid_argument("value must be finite and non-negative");

  const Rat target = rat_from_double(x);
  Int num = rat_num(target);
  Int den = rat_den(target);
  const Int bound(max_den);

  // Convergent recurrence state: (h0, k0) = h_{-2}, (h1, k1) = h_{-1}.
  Int h0 = 0, k0 = 1;
  Int h1 = 1, k1 = 0;

  while (true) {
    const Int a = num / den;
    const Int h2 = a * h1 + h0;
    const Int k2 = a * k1 + k0;
    if (k2 > bound) {
      // Best semiconvergent t*h1 + h0 with denominator within bound, against
      // the last full convergent h1/k1. Ties go to the smaller denominator,
      // then the smaller numerator.
      const Int t = (bound - k0) / k1;
      Rat best(h1, k1);
      if (t >= 1) {
        const Rat semi(t * h1 + h0, t * k1 + k0);
        const Rat db = abs(target - best);
        const Rat ds = abs(target - semi);
        if (ds < db ||
            (ds == db && (rat_den(semi) < rat_den(best) ||
                          (rat_den(semi) == rat_den(best) && rat_num(semi) < rat_num(best)))))
          best = semi;
      }
      return best;
    }
    const Int rem = num - a * den;
    if (rem == 0) return Rat(h2, k2);
    h0 = h1;
    k0 = k1;
    h1 = h2;
    k1 = k2;
    num = den;
    den = rem;
  }
}

}  // namespace syncwalk
