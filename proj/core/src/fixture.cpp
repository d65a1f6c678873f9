#include "psv/fixture.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace psv {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

[[noreturn]] void bail(int line, const std::string& msg) {
  throw FixtureError("fixture line " + std::to_string(line) + ": " + msg);
}

Rational parse_rational(const std::string& s, int line) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0)
    bail(line, "bad rational '" + s + "'");
  if (r.get_den() == 0) bail(line, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

long parse_long(const std::string& s, int line) {
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    bail(line, "bad integer '" + s + "'");
  }
}

Cyclo parse_cyclo_at(const std::string& text, int line) {
  // tokens: [rational] [z<N>[^k]] joined by whitespace or '*'
  std::string t = text;
  for (char& ch : t)
    if (ch == '*') ch = ' ';
  std::stringstream ss(t);
  std::string tok;
  Cyclo out(1L);
  bool any = false;
  while (ss >> tok) {
    any = true;
    if (tok[0] == 'z') {
      size_t caret = tok.find('^');
      std::string ns = caret == std::string::npos ? tok.substr(1)
                                                  : tok.substr(1, caret - 1);
      long N = parse_long(ns, line);
      long k = caret == std::string::npos
                   ? 1
                   : parse_long(tok.substr(caret + 1), line);
      if (N < 1) bail(line, "bad root order in '" + tok + "'");
      out *= Cyclo::zeta(static_cast<int>(N), k);
    } else {
      out *= Cyclo(parse_rational(tok, line));
    }
  }
  if (!any) bail(line, "empty character value");
  return out;
}

struct PendingChar {
  int line = 0;
  std::string value;
};

CharDatum build_char(const PadicContext* ctx, const PendingChar& pc) {
  const int line = pc.line;
  std::vector<std::string> parts = split(pc.value, ';');
  if (parts.size() != 3)
    bail(line, "expected 'unif ... ; unit ... ; alg ...'");
  if (parts[0].rfind("unif", 0) != 0) bail(line, "expected 'unif' field");
  if (parts[1].rfind("unit", 0) != 0) bail(line, "expected 'unit' field");
  if (parts[2].rfind("alg", 0) != 0) bail(line, "expected 'alg' field");
  Cyclo at_unif = parse_cyclo_at(trim(parts[0].substr(4)), line);

  std::string unit_spec = trim(parts[1].substr(4));
  size_t colon = unit_spec.find(':');
  std::string cs = trim(colon == std::string::npos ? unit_spec
                                                   : unit_spec.substr(0, colon));
  long c = parse_long(cs, line);
  if (c < 0) bail(line, "negative unit level");
  std::vector<Rational> gen_logs;
  if (colon != std::string::npos)
    for (const std::string& ls : split(unit_spec.substr(colon + 1), ','))
      if (!ls.empty()) gen_logs.push_back(parse_rational(ls, line));

  CharDatum d;
  if (c == 0) {
    if (!gen_logs.empty()) bail(line, "unit 0 takes no generator logs");
    d.smooth = SmoothChar::unramified(ctx, at_unif);
  } else {
    ResidueRing r = ctx->ring(static_cast<int>(c));
    UnitChar uc;
    try {
      uc = unit_char_from_logs(r, gen_logs);
    } catch (const FixtureError& e) {
      bail(line, e.what());
    }
    d.smooth = SmoothChar::make(ctx, at_unif, uc);
  }

  std::string alg_spec = trim(parts[2].substr(3));
  d.algebraic = AlgebraicPart::zero(ctx->f());
  std::vector<std::string> es = split(alg_spec, ',');
  if (static_cast<int>(es.size()) != ctx->f())
    bail(line, "alg needs exactly f = " + std::to_string(ctx->f()) +
                   " exponents");
  for (size_t i = 0; i < es.size(); ++i)
    d.algebraic.exponents[i] = parse_long(es[i], line);
  return d;
}

}  // namespace

Cyclo parse_cyclo(const std::string& text) { return parse_cyclo_at(text, 0); }

UnitChar unit_char_from_logs(const ResidueRing& r,
                             const std::vector<Rational>& gen_logs) {
  UnitGroupStructure st = unit_group_structure(r);
  if (gen_logs.size() != st.gens.size())
    throw FixtureError("unit character needs " +
                       std::to_string(st.gens.size()) + " generator logs");
  auto norm = [](Rational x) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    x -= Rational(fl);
    x.canonicalize();
    return x;
  };
  std::vector<Rational> want;
  want.reserve(gen_logs.size());
  for (const Rational& x : gen_logs) want.push_back(norm(x));
  for (const UnitChar& uc : enumerate_unit_characters(r)) {
    bool ok = true;
    for (size_t i = 0; i < st.gens.size(); ++i)
      if (uc.log_of(r, st.gens[i]) != want[i]) ok = false;
    if (ok) return uc;
  }
  throw FixtureError("no unit character realizes the requested logs");
}

FixtureFile parse_fixture(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  std::optional<long> p, f, level;
  FixtureFile out;
  std::string cur_name;
  std::map<int, PendingChar> cur_chis;
  std::optional<long> cur_n;
  int cur_line = 0;
  bool in_tuple = false;

  auto flush_tuple = [&]() {
    if (!in_tuple) return;
    if (cur_chis.empty()) bail(cur_line, "tuple '" + cur_name + "' is empty");
    int n = static_cast<int>(cur_chis.size());
    if (cur_n && *cur_n != n)
      bail(cur_line, "tuple '" + cur_name + "' declares n=" +
                         std::to_string(*cur_n) + " but has " +
                         std::to_string(n) + " characters");
    std::vector<CharDatum> entries;
    for (int i = 1; i <= n; ++i) {
      auto it = cur_chis.find(i);
      if (it == cur_chis.end())
        bail(cur_line, "tuple '" + cur_name + "' missing chi" +
                           std::to_string(i));
      entries.push_back(build_char(out.ctx.get(), it->second));
    }
    out.tuples.push_back({cur_name, CharTuple::make(std::move(entries))});
    cur_chis.clear();
    cur_n.reset();
  };

  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    size_t hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') bail(line, "unterminated section header");
      std::vector<std::string> hdr = split(s.substr(1, s.size() - 2), ' ');
      if (hdr.size() != 2 || hdr[0] != "tuple")
        bail(line, "expected '[tuple <name>]'");
      if (!p || !f || !level)
        bail(line, "p, f and level must precede the first tuple");
      if (!out.ctx)
        out.ctx = std::make_shared<PadicContext>(
            *p, static_cast<int>(*f), static_cast<int>(*level));
      flush_tuple();
      in_tuple = true;
      cur_name = hdr[1];
      cur_line = line;
      continue;
    }

    size_t eq = s.find('=');
    if (eq == std::string::npos) bail(line, "expected 'key = value'");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));

    if (!in_tuple) {
      if (key == "p") p = parse_long(value, line);
      else if (key == "f") f = parse_long(value, line);
      else if (key == "level") level = parse_long(value, line);
      else bail(line, "unknown key '" + key + "'");
      continue;
    }
    if (key == "n") {
      cur_n = parse_long(value, line);
    } else if (key.rfind("chi", 0) == 0) {
      long i = parse_long(key.substr(3), line);
      if (i < 1) bail(line, "bad character index in '" + key + "'");
      if (cur_chis.count(static_cast<int>(i)))
        bail(line, "duplicate key '" + key + "'");
      cur_chis[static_cast<int>(i)] = {line, value};
    } else {
      bail(line, "unknown key '" + key + "'");
    }
  }
  flush_tuple();
  if (!p || !f || !level)
    throw FixtureError("fixture: missing p, f or level");
  if (!out.ctx)
    out.ctx = std::make_shared<PadicContext>(*p, static_cast<int>(*f),
                                             static_cast<int>(*level));
  return out;
}

FixtureFile load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open fixture file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fixture(ss.str());
}

}  // namespace psv
