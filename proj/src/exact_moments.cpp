#include "subpoisson/exact_moments.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>

#include "subpoisson/errors.hpp"

namespace subpoisson {
namespace {

void require_probability(const Rational& p, const char* what) {
  if (p <= 0 || p > 1)
    throw DomainError(std::string(what) + " must lie in (0, 1], got " + p.get_str());
}

BigInt pow10(long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

Rational rational_pow(const Rational& base, unsigned k) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), k);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), k);
  r.canonicalize();
  return r;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto bad = [&] { return DomainError("not a rational number: '" + text + "'"); };
  if (text.empty()) throw bad();

  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    const auto is_int = [](const std::string& s) {
      std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
      if (i >= s.size()) return false;
      return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                         [](unsigned char c) { return std::isdigit(c) != 0; });
    };
    if (!is_int(num) || !is_int(den)) throw bad();
    Rational r(BigInt(num[0] == '+' ? num.substr(1) : num),
               BigInt(den[0] == '+' ? den.substr(1) : den));
    if (r.get_den() == 0) throw DomainError("zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
  }

  // [sign] digits [. digits] [(e|E) [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits += text[i++];
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i++];
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw bad();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(text.substr(i), &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used == 0 || std::abs(e) > 100000) throw bad();
    i += used;
    scale += e;
  }
  if (i != text.size()) throw bad();

  Rational r{BigInt(digits)};
  if (scale > 0) r *= pow10(scale);
  if (scale < 0) r /= pow10(-scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

StirlingTable::StirlingTable(unsigned max_k) {
  rows_.push_back({BigInt(1)});
  extend_to(max_k);
}

StirlingTable& StirlingTable::shared() {
  static StirlingTable table;
  return table;
}

unsigned StirlingTable::max_k() const {
  std::shared_lock lock(mutex_);
  return static_cast<unsigned>(rows_.size() - 1);
}

void StirlingTable::extend_to(unsigned k) {
  while (rows_.size() <= k) {
    const std::vector<BigInt>& prev = rows_.back();
    const std::size_t n = prev.size();  // new row index
    std::vector<BigInt> next(n + 1);
    next[0] = 0;
    for (std::size_t i = 1; i < n; ++i) next[i] = prev[i] * static_cast<unsigned long>(i) + prev[i - 1];
    next[n] = 1;
    rows_.push_back(std::move(next));
  }
}

const std::vector<BigInt>& StirlingTable::row(unsigned k) {
  {
    std::shared_lock lock(mutex_);
    if (k < rows_.size()) return rows_[k];
  }
  std::unique_lock lock(mutex_);
  extend_to(k);
  return rows_[k];
}

BigInt StirlingTable::at(unsigned k, unsigned i) {
  if (i > k)
    throw DomainError("stirling2: i = " + std::to_string(i) + " exceeds k = " + std::to_string(k));
  return row(k)[i];
}

BigInt stirling2(unsigned k, unsigned i) { return StirlingTable::shared().at(k, i); }

BigInt falling_factorial(const BigInt& n, unsigned k) {
  BigInt r = 1;
  for (unsigned j = 0; j < k; ++j) {
    r *= n - j;
    if (r == 0) break;
  }
  return r;
}

BigInt bell_number(unsigned k) {
  BigInt sum = 0;
  for (const BigInt& s : StirlingTable::shared().row(k)) sum += s;
  return sum;
}

Rational binomial_raw_moment(long n, const Rational& p, unsigned k) {
  if (n <= 0) throw DomainError("binomial trials must be positive, got " + std::to_string(n));
  require_probability(p, "binomial success probability");
  const std::vector<BigInt>& s = StirlingTable::shared().row(k);
  const unsigned top = static_cast<unsigned>(std::min<long>(k, n));
  Rational sum = 0;
  BigInt falling = 1;
  Rational p_pow = 1;
  for (unsigned i = 0; i <= top; ++i) {
    if (i > 0) {
      falling *= n - static_cast<long>(i) + 1;
      p_pow *= p;
    }
    sum += Rational(s[i] * falling) * p_pow;
  }
  sum.canonicalize();
  return sum;
}

Rational poisson_raw_moment(const Rational& mu, unsigned k) {
  if (mu <= 0) throw DomainError("Poisson mean must be positive, got " + mu.get_str());
  const std::vector<BigInt>& s = StirlingTable::shared().row(k);
  // Horner in mu over the Stirling row.
  Rational acc = 0;
  for (unsigned i = k + 1; i-- > 0;) acc = acc * mu + Rational(s[i]);
  acc.canonicalize();
  return acc;
}

Rational binomial_factorial_moment(long n, const Rational& p, unsigned k) {
  if (n <= 0) throw DomainError("binomial trials must be positive, got " + std::to_string(n));
  Rational r(falling_factorial(BigInt(n), k));
  r *= rational_pow(p, k);
  r.canonicalize();
  return r;
}

std::vector<Rational> bernoulli_sum_pmf(const std::vector<Rational>& probs) {
  std::vector<Rational> pmf{Rational(1)};
  for (const Rational& p : probs) {
    require_probability(p, "Bernoulli probability");
    const Rational q = 1 - p;
    std::vector<Rational> next(pmf.size() + 1, Rational(0));
    for (std::size_t x = 0; x < pmf.size(); ++x) {
      next[x] += pmf[x] * q;
      next[x + 1] += pmf[x] * p;
    }
    pmf = std::move(next);
  }
  return pmf;
}

Rational bernoulli_sum_raw_moment(const std::vector<Rational>& probs, unsigned k,
                                  std::size_t cap) {
  if (probs.empty()) throw DomainError("Bernoulli sum needs at least one probability");
  if (probs.size() > cap)
    throw SizeError("Bernoulli sum of length " + std::to_string(probs.size()) +
                    " exceeds the cap of " + std::to_string(cap));
  const std::vector<Rational> pmf = bernoulli_sum_pmf(probs);
  Rational sum = 0;
  for (std::size_t x = 0; x < pmf.size(); ++x) {
    if (pmf[x] == 0) continue;
    BigInt xk;
    mpz_ui_pow_ui(xk.get_mpz_t(), x, k);
    sum += pmf[x] * Rational(xk);
  }
  sum.canonicalize();
  return sum;
}

Distribution Distribution::poisson(Rational mean) {
  if (mean <= 0) throw DomainError("Poisson mean must be positive, got " + mean.get_str());
  return Distribution(PoissonParams{std::move(mean)});
}

Distribution Distribution::binomial(long trials, Rational success) {
  if (trials <= 0)
    throw DomainError("binomial trials must be positive, got " + std::to_string(trials));
  require_probability(success, "binomial success probability");
  return Distribution(BinomialParams{trials, std::move(success)});
}

Distribution Distribution::bernoulli_sum(std::vector<Rational> probs, std::size_t cap) {
  if (probs.empty()) throw DomainError("Bernoulli sum needs at least one probability");
  if (probs.size() > cap)
    throw SizeError("Bernoulli sum of length " + std::to_string(probs.size()) +
                    " exceeds the cap of " + std::to_string(cap));
  for (const Rational& p : probs) require_probability(p, "Bernoulli probability");
  Distribution d(BernoulliSumParams{std::move(probs)});
  d.cap_ = cap;
  return d;
}

Rational Distribution::mean() const {
  return std::visit(
      [](const auto& d) -> Rational {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PoissonParams>) {
          return d.mean;
        } else if constexpr (std::is_same_v<T, BinomialParams>) {
          return Rational(d.trials) * d.success;
        } else {
          Rational s = 0;
          for (const Rational& p : d.probs) s += p;
          return s;
        }
      },
      params_);
}

Rational Distribution::raw_moment(unsigned k) const {
  return std::visit(
      [&](const auto& d) -> Rational {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PoissonParams>) {
          return poisson_raw_moment(d.mean, k);
        } else if constexpr (std::is_same_v<T, BinomialParams>) {
          return binomial_raw_moment(d.trials, d.success, k);
        } else {
          return bernoulli_sum_raw_moment(d.probs, k, cap_);
        }
      },
      params_);
}

bool Distribution::is_deterministic() const {
  return std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PoissonParams>) {
          return false;
        } else if constexpr (std::is_same_v<T, BinomialParams>) {
          return d.success == 1;
        } else {
          return std::all_of(d.probs.begin(), d.probs.end(),
                             [](const Rational& p) { return p == 1; });
        }
      },
      params_);
}

std::string Distribution::describe() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PoissonParams>) {
          os << "Poisson(" << d.mean.get_str() << ")";
        } else if constexpr (std::is_same_v<T, BinomialParams>) {
          os << "Binomial(" << d.trials << ", " << d.success.get_str() << ")";
        } else {
          os << "BernoulliSum(";
          for (std::size_t i = 0; i < d.probs.size(); ++i)
            os << (i ? " " : "") << d.probs[i].get_str();
          os << ")";
        }
      },
      params_);
  return os.str();
}

}  // namespace subpoisson
