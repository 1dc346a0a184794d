#include "neumaps/primitivity.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace neumaps {

namespace {

Label mod(Label a, Label n) { return ((a % n) + n) % n; }

const TrackPoint* on_track(const PointRef& p) { return std::get_if<TrackPoint>(&p); }

bool fixes(const CompiledModel& m, Gen g, const PointRef& p) { return m.act(g, 1, p) == p; }

void require_single_track(const CompiledModel& m, const char* what) {
  if (m.track_count() != 1) throw MapError(MapErrorCode::WrongTrackCount, std::string(what) + " needs a single-track model");
}

std::vector<Label> divisors(Label n) {
  std::vector<Label> out;
  for (Label d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

/// Labels of darts carrying `mark` in blocks [lo, hi).
std::vector<Label> marked_labels(const CompiledModel& m, const std::string& mark, BlockIndex lo, BlockIndex hi) {
  std::vector<Label> out;
  for (BlockIndex l = lo; l < hi; ++l) {
    const auto& t = m.block_template(l);
    const auto it = t.marks.find(mark);
    if (it == t.marks.end()) continue;
    const auto pt = m.point_of({l, it->second});
    if (const auto* tp = on_track(pt)) out.push_back(tp->index);
  }
  return out;
}

/// The blocks of a one-ended chain whose local structure covers every dart
/// up to `periods` repetitions of the tail.
BlockIndex tail_end(const CompiledModel& m, std::int64_t periods) {
  return static_cast<BlockIndex>(m.core_size()) + static_cast<BlockIndex>(periods * static_cast<std::int64_t>(m.period_size()));
}

}  // namespace

CongruenceResult congruence_test(const CompiledModel& m, int n, Label radius) {
  require_single_track(m, "congruence_test");
  if (n < 2) throw std::invalid_argument("congruence_test: n must be >= 2");
  CongruenceResult r;
  r.n = n;
  // Upper labels advance by A and lower labels by B per tail period; the
  // residues of every tail block repeat after K0 periods.
  const Label a = m.upper_period_slope(), b = m.lower_period_slope();
  const Label k0 = std::lcm(n / std::gcd<Label>(n, a), n / std::gcd<Label>(n, b));
  r.periods_enumerated = k0 + 1;
  BlockIndex hi = tail_end(m, k0 + 1);
  if (radius > 0) hi = std::max(hi, m.block_range(radius).second + 1);
  // Only on-track image pairs are compared. In models with loop points the
  // x-images are compared as well.
  const bool check_x = m.has_off_track_darts();
  struct Seen {
    Label label;
    Label image;
  };
  std::vector<std::optional<Seen>> seen_y(static_cast<std::size_t>(n)), seen_x(static_cast<std::size_t>(n));
  for (BlockIndex l = 0; l < hi; ++l) {
    const auto darts = static_cast<int>(m.block_template(l).darts.size());
    for (int d = 0; d < darts; ++d) {
      const auto pt = m.point_of({l, d});
      const auto* tp = on_track(pt);
      if (!tp) continue;
      const auto res = static_cast<std::size_t>(mod(tp->index, n));
      for (Gen g : {Gen::Y, Gen::X}) {
        if (g == Gen::X && !check_x) continue;
        const PointRef image = m.act(g, 1, pt);
        const auto* img = on_track(image);
        if (!img) continue;
        auto& slot = (g == Gen::Y ? seen_y : seen_x)[res];
        const Label ir = mod(img->index, n);
        if (!slot) {
          slot = Seen{tp->index, ir};
        } else if (slot->image != ir) {
          r.violation = LabelPair{slot->label, tp->index};
          return r;
        }
      }
    }
  }
  r.invariant = true;
  return r;
}

std::optional<LabelPair> fixed_point_witness(const CompiledModel& m, int n, Label radius, int track) {
  if (n < 2) throw std::invalid_argument("fixed_point_witness: n must be >= 2");
  std::vector<Label> xs, ys;
  for (Label k = 0; k <= 2 * radius; ++k) {
    const Label i = (k % 2 == 0) ? -k / 2 : (k + 1) / 2;
    if (fixes(m, Gen::X, TrackPoint{track, i})) xs.push_back(i);
  }
  for (Label j = 0; j <= radius; ++j)
    if (fixes(m, Gen::Y, TrackPoint{track, j})) ys.push_back(j);
  for (Label j = -1; j >= -radius; --j)
    if (fixes(m, Gen::Y, TrackPoint{track, j})) ys.push_back(j);
  for (Label i : xs)
    for (Label j : ys)
      if (mod(i - j, n) == 0) return LabelPair{i, j};
  return std::nullopt;
}

StabilizerSchema flower_schema(int p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("flower_schema: p must be odd and >= 3");
  const Label l = (p - 1) / 2;
  StabilizerSchema s;
  s.w = Word::gen(Gen::Z, 1).pow(static_cast<int>(l + 1)) * Word::gen(Gen::Y);
  s.pairs = {{1, -2 * l - 2}, {-l - 1, l + 1}};
  return s;
}

namespace {

Label parse_label(std::string_view s, std::string_view context) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  Label v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("schema: expected an integer in '" + std::string(context) + "', got '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

}  // namespace

Schema parse_schema(std::string_view text, int p) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("schema: expected 'fixed:' or 'stabilizer:' prefix");
  const auto kind = text.substr(0, colon);
  const auto parts = split(text.substr(colon + 1), ';');
  if (kind == "fixed") {
    if (parts.size() != 2) throw std::invalid_argument("schema: expected 'fixed:<x>;<a>n[+<b>]'");
    FixedPointSchema f;
    f.x_fix = parse_label(parts[0], text);
    std::string fam;
    for (char c : parts[1])
      if (c != ' ') fam.push_back(c);
    const auto npos = fam.find('n');
    if (npos == std::string::npos) throw std::invalid_argument("schema: family must contain 'n'");
    f.a = npos == 0 ? 1 : parse_label(std::string_view(fam).substr(0, npos), text);
    f.b = npos + 1 == fam.size() ? 0 : parse_label(std::string_view(fam).substr(npos + 1), text);
    return f;
  }
  if (kind == "stabilizer") {
    if (parts.size() == 1 && parts[0] == "flower") return flower_schema(p);
    if (parts.empty() || parts[0].empty()) throw std::invalid_argument("schema: stabilizer needs a word");
    StabilizerSchema s;
    s.w = parse_word(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const auto part = parts[i];
      if (part.substr(0, 5) == "mark=") {
        s.mark = std::string(part.substr(5));
        continue;
      }
      const auto gt = part.find('>');
      if (gt == std::string_view::npos) throw std::invalid_argument("schema: expected pair 'from>to', got '" + std::string(part) + "'");
      s.pairs.emplace_back(parse_label(part.substr(0, gt), text), parse_label(part.substr(gt + 1), text));
    }
    return s;
  }
  throw std::invalid_argument("schema: unknown kind '" + std::string(kind) + "'");
}

std::string to_string(const Schema& s) {
  std::ostringstream os;
  if (const auto* f = std::get_if<FixedPointSchema>(&s)) {
    os << "fixed:" << f->x_fix << ';' << f->a << 'n';
    if (f->b > 0) os << '+' << f->b;
    if (f->b < 0) os << f->b;
    return os.str();
  }
  const auto& st = std::get<StabilizerSchema>(s);
  os << "stabilizer:" << to_string(st.w);
  if (st.mark != "principal") os << ";mark=" << st.mark;
  for (const auto& [from, to] : st.pairs) os << ';' << from << '>' << to;
  return os.str();
}

namespace {

/// Smallest n >= 2 with a*n + b >= start, plus one residue cycle of the
/// family modulo the tail period.
Label structural_bound(const FixedPointSchema& f, const CompiledModel::TrackTail& tail) {
  Label n0 = 2;
  if (f.a * n0 + f.b < tail.start) n0 = (tail.start - f.b + f.a - 1) / f.a;
  return std::max<Label>(n0, 2) + tail.period / std::gcd(f.a, tail.period);
}

std::optional<SchemaFailure> check_fixed_family(const CompiledModel& m, const FixedPointSchema& f, Label n_hi) {
  if (!fixes(m, Gen::X, TrackPoint{0, f.x_fix}))
    return SchemaFailure{"x does not fix " + std::to_string(f.x_fix), std::nullopt, std::nullopt};
  for (Label n = 2; n <= n_hi; ++n) {
    const Label j = f.a * n + f.b;
    if (!fixes(m, Gen::Y, TrackPoint{0, j}))
      return SchemaFailure{"y does not fix " + std::to_string(j), n, LabelPair{f.x_fix, j}};
  }
  return std::nullopt;
}

std::variant<Certificate, SchemaFailure> certify_fixed(const CompiledModel& m, const FixedPointSchema& f, Label n_sample) {
  if (f.a < 1) return SchemaFailure{"family slope must be positive", std::nullopt, std::nullopt};
  if (auto fail = check_fixed_family(m, f, n_sample)) return *fail;
  if (f.x_fix != f.b)
    return SchemaFailure{"x-fixed label must equal the family offset so that it is congruent to a*n+b for every n",
                         std::nullopt, std::nullopt};
  FixedPointCertificate c;
  c.schema = f;
  c.n_sample = n_sample;
  const auto tail = m.track_tail(0, true);
  c.tail_start = tail.start;
  c.tail_period = tail.period;
  c.n_structural = structural_bound(f, tail);
  if (auto fail = check_fixed_family(m, f, std::max(n_sample, c.n_structural))) return *fail;
  return Certificate{c};
}

std::optional<SchemaFailure> finishing_branch(const CompiledModel& m, StabilizerCertificate& c) {
  const BlockIndex hi = tail_end(m, 2);
  for (BlockIndex l = 0; l < hi; ++l)
    for (const auto& cyc : m.block_shape(l).closed)
      for (int d : cyc) {
        const PointRef delta = LoopPoint{l, d};
        if (!on_track(m.act(Gen::Y, -1, delta)))
          return SchemaFailure{"dart " + to_string(delta) + " is neither on the track nor a y-image of it", std::nullopt,
                               std::nullopt};
      }
  c.track_and_y_cover = true;
  if (!on_track(m.act(Gen::Y, -1, TrackPoint{0, 0})))
    return SchemaFailure{"y^-1 of the base dart is off the track", std::nullopt, std::nullopt};
  c.alpha_in_both = true;
  return std::nullopt;
}

std::variant<Certificate, SchemaFailure> certify_stabilizer(const CompiledModel& m, const StabilizerSchema& s, Label n_sample,
                                                            Label radius) {
  if (!m.one_ended()) return SchemaFailure{"stabilizer schema needs a one-ended chain", std::nullopt, std::nullopt};
  StabilizerCertificate c;
  c.schema = s;
  c.n_sample = n_sample;
  const auto core = static_cast<BlockIndex>(m.core_size());
  c.principal_core = marked_labels(m, s.mark, 0, core);
  c.principal_tail = marked_labels(m, s.mark, core, tail_end(m, 1));
  if (c.principal_tail.empty()) return SchemaFailure{"no '" + s.mark + "' darts in the tail", std::nullopt, std::nullopt};
  c.slope = m.upper_period_slope();
  const auto second = marked_labels(m, s.mark, tail_end(m, 1), tail_end(m, 2));
  for (std::size_t k = 0; k < c.principal_tail.size(); ++k)
    if (second.size() != c.principal_tail.size() || second[k] != c.principal_tail[k] + c.slope)
      return SchemaFailure{"marked labels do not advance by the tail slope", std::nullopt, std::nullopt};

  // w fixes every marked dart: the core, and enough tail periods that w's
  // path from a marked dart stays inside repeated structure.
  c.checked_periods = 2 + static_cast<std::int64_t>(s.w.size());
  for (Label lab : marked_labels(m, s.mark, 0, tail_end(m, c.checked_periods)))
    if (m.act(s.w, TrackPoint{0, lab}) != PointRef{TrackPoint{0, lab}})
      return SchemaFailure{"w does not fix marked label " + std::to_string(lab), std::nullopt, LabelPair{lab, lab}};

  Label g_all = 0;
  for (const auto& [from, to] : s.pairs) {
    const auto img = m.act(s.w, TrackPoint{0, from});
    if (img != PointRef{TrackPoint{0, to}})
      return SchemaFailure{"w sends " + std::to_string(from) + " to " + to_string(img) + ", not " + std::to_string(to),
                           std::nullopt, LabelPair{from, to}};
    const Label modulus = std::abs(to - from);
    if (modulus == 0) return SchemaFailure{"forcing pair has equal ends", std::nullopt, LabelPair{from, to}};
    c.forced_moduli.push_back(modulus);
    g_all = std::gcd(g_all, modulus);
  }
  c.gcd = g_all;
  if (g_all != 1)
    return SchemaFailure{"gcd of forced moduli is " + std::to_string(g_all), std::nullopt, std::nullopt};

  // For a modulus n with gcd(n, S) = g the tail marked labels meet exactly the
  // residues congruent to some of them mod g. A pair is forced when its source
  // class contains a marked dart; moduli not excluded that way are refuted by
  // an explicit congruence violation.
  for (Label g : divisors(c.slope)) {
    CoverageEntry e;
    e.divisor = g;
    Label gg = 0;
    for (std::size_t k = 0; k < s.pairs.size(); ++k) {
      const Label from = s.pairs[k].first;
      const bool hit = std::any_of(c.principal_tail.begin(), c.principal_tail.end(),
                                   [&](Label lam) { return mod(from - lam, g) == 0; });
      if (!hit) continue;
      e.active_pairs.push_back(static_cast<int>(k));
      gg = std::gcd(gg, c.forced_moduli[k]);
    }
    if (e.active_pairs.empty())
      return SchemaFailure{"no forcing pair applies to moduli n with gcd(n, S) = " + std::to_string(g), std::nullopt,
                           std::nullopt};
    for (Label n : divisors(gg))
      if (n >= 2 && std::gcd(n, c.slope) == g) e.residual_moduli.push_back(n);
    for (Label n : e.residual_moduli) {
      const auto cr = congruence_test(m, static_cast<int>(n));
      if (cr.invariant)
        return SchemaFailure{"congruence mod " + std::to_string(n) + " is not excluded", n, std::nullopt};
      c.residual_violations.emplace_back(n, *cr.violation);
    }
    c.coverage.push_back(std::move(e));
  }

  const auto window_marks = marked_labels(m, s.mark, 0, m.block_range(radius).second + 1);
  for (Label d = 2; d <= n_sample; ++d) {
    std::vector<bool> hit(static_cast<std::size_t>(d), false);
    for (Label lam : window_marks) hit[static_cast<std::size_t>(mod(lam, d))] = true;
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) ++c.sampled_covered;
  }

  if (auto fail = finishing_branch(m, c)) return *fail;
  return Certificate{c};
}

}  // namespace

std::variant<Certificate, SchemaFailure> certify_schema(const CompiledModel& m, const Schema& schema, Label n_sample,
                                                        Label radius) {
  require_single_track(m, "certify_schema");
  if (const auto* f = std::get_if<FixedPointSchema>(&schema)) return certify_fixed(m, *f, n_sample);
  return certify_stabilizer(m, std::get<StabilizerSchema>(schema), n_sample, radius);
}

namespace {

PointRef swap_point(const PointRef& p, Label c) {
  const auto& tp = std::get<TrackPoint>(p);
  return tp.track == 0 ? TrackPoint{1, tp.index + c} : TrackPoint{0, tp.index - c};
}

/// First dart of the window where i -> (i + c)', j' -> j - c fails to
/// commute with x or y.
std::optional<PointRef> swap_failure(const CompiledModel& m, Label c, Label window) {
  for (Label k = 0; k <= 2 * window; ++k) {
    const Label i = (k % 2 == 0) ? -k / 2 : (k + 1) / 2;
    for (int t = 0; t < 2; ++t) {
      const PointRef beta = TrackPoint{t, i};
      for (Gen g : {Gen::X, Gen::Y})
        if (swap_point(m.act(g, 1, beta), c) != m.act(g, 1, swap_point(beta, c))) return beta;
    }
  }
  return std::nullopt;
}

Label core_extent(const CompiledModel& m) {
  Label e = 0;
  for (BlockIndex l = 0; l < static_cast<BlockIndex>(std::max<std::size_t>(m.core_size(), 1)); ++l) {
    const auto darts = static_cast<int>(m.block_template(l).darts.size());
    for (int d = 0; d < darts; ++d) {
      const PointRef pt = m.point_of({l, d});
      if (const auto* tp = on_track(pt)) e = std::max(e, std::abs(tp->index));
    }
  }
  return e;
}

Label tail_lcm(const CompiledModel& m) {
  Label L = 1;
  for (int t = 0; t < m.track_count(); ++t)
    for (bool pos : {true, false}) L = std::lcm(L, m.track_tail(t, pos).period);
  return L;
}

std::optional<TrackFamily> track_family(const CompiledModel& m, int track, Label radius) {
  std::optional<Label> i0;
  for (Label k = 0; k <= 2 * radius && !i0; ++k) {
    const Label i = (k % 2 == 0) ? -k / 2 : (k + 1) / 2;
    if (fixes(m, Gen::X, TrackPoint{track, i})) i0 = i;
  }
  if (!i0) return std::nullopt;
  for (bool pos : {true, false}) {
    const auto tail = m.track_tail(track, pos);
    for (Label k = 0; k < tail.period; ++k) {
      const Label j = pos ? tail.start + k : tail.start - k;
      if (mod(j - *i0, tail.period) == 0 && fixes(m, Gen::Y, TrackPoint{track, j}))
        return TrackFamily{track, *i0, j, tail.period};
    }
  }
  return std::nullopt;
}

/// Two darts of `track` whose y-images lie on the other track, and one whose
/// y-image stays on it.
std::optional<std::vector<std::pair<PointRef, PointRef>>> crossings(const CompiledModel& m, int track, Label radius) {
  std::vector<std::pair<PointRef, PointRef>> across, stay;
  for (Label k = 0; k <= 2 * radius; ++k) {
    const Label i = (k % 2 == 0) ? -k / 2 : (k + 1) / 2;
    const PointRef beta = TrackPoint{track, i};
    const PointRef img = m.act(Gen::Y, 1, beta);
    const auto* tp = on_track(img);
    if (!tp) continue;
    if (tp->track != track && across.size() < 2) across.emplace_back(beta, img);
    if (tp->track == track && img != beta && stay.empty()) stay.emplace_back(beta, img);
    if (across.size() == 2 && !stay.empty()) {
      across.push_back(stay.front());
      return across;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Label> find_track_swap(const CompiledModel& m, Label radius, Label shift_bound) {
  if (m.track_count() != 2) throw MapError(MapErrorCode::WrongTrackCount, "find_track_swap needs two tracks");
  for (bool pos : {true, false})
    if (m.track_tail(0, pos).period != m.track_tail(1, pos).period) return std::nullopt;
  const Label base = core_extent(m) + 2 * tail_lcm(m);
  for (Label k = 0; k <= 2 * shift_bound; ++k) {
    const Label c = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
    if (!swap_failure(m, c, std::max(radius, base + std::abs(c)))) return c;
  }
  return std::nullopt;
}

PrimitivityVerdict two_track_analysis(const CompiledModel& m, Label radius, Label shift_bound) {
  if (m.track_count() != 2) throw MapError(MapErrorCode::WrongTrackCount, "two_track_analysis needs two tracks");
  if (m.description().catalog_name.rfind("twoface", 0) != 0)
    return Unknown{"track-swap elimination is only established for the catalog two-face maps", {}};
  if (m.has_off_track_darts()) return Unknown{"off-track darts alongside two tracks", {}};
  TwoTrackCertificate cert;
  cert.radius = radius;
  cert.shift_bound = shift_bound;
  for (int t = 0; t < 2; ++t) {
    const auto fam = track_family(m, t, radius);
    if (!fam) return Unknown{"no fixed-point family on track " + std::to_string(t), {}};
    cert.families.push_back(*fam);
  }
  for (int t = 0; t < 2; ++t) {
    const auto cr = crossings(m, t, radius);
    if (!cr) return Unknown{"no y-crossings between the tracks in the window", {}};
    cert.crossings.insert(cert.crossings.end(), cr->begin(), cr->end());
  }
  const Label L = tail_lcm(m);
  cert.certified_bound = 2 * core_extent(m) + L;
  bool periods_differ = false;
  for (bool pos : {true, false}) periods_differ |= m.track_tail(0, pos).period != m.track_tail(1, pos).period;
  if (!periods_differ) {
    if (shift_bound < cert.certified_bound)
      return Unknown{"shift bound " + std::to_string(shift_bound) + " is below the certified bound " +
                         std::to_string(cert.certified_bound),
                     {}};
    const Label base = core_extent(m) + 2 * L;
    for (Label k = 0; k <= 2 * shift_bound; ++k) {
      const Label c = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
      const auto fail = swap_failure(m, c, std::max(radius, base + std::abs(c)));
      if (!fail) return Imprimitive{std::nullopt, c};
      cert.swap_refutations.emplace_back(c, *fail);
    }
  }
  return Primitive{Certificate{cert}};
}

namespace {

std::optional<std::string> verify_fixed(const CompiledModel& m, const FixedPointCertificate& c) {
  const auto& f = c.schema;
  if (f.a < 1 || f.x_fix != f.b) return "schema does not force congruent fixed points";
  const auto tail = m.track_tail(0, true);
  if (tail.start != c.tail_start || tail.period != c.tail_period) return "stored tail does not match the model";
  if (c.n_structural < structural_bound(f, tail)) return "structural range does not cover a residue cycle of the tail";
  if (auto fail = check_fixed_family(m, f, std::max(c.n_sample, c.n_structural))) return fail->reason;
  return std::nullopt;
}

std::optional<std::string> verify_stabilizer(const CompiledModel& m, const StabilizerCertificate& c) {
  const auto& s = c.schema;
  if (!m.one_ended() || m.track_count() != 1) return "model shape does not match";
  if (c.slope != m.upper_period_slope()) return "stored slope does not match the model";
  const auto core = static_cast<BlockIndex>(m.core_size());
  if (marked_labels(m, s.mark, 0, core) != c.principal_core) return "stored core marks do not match";
  if (marked_labels(m, s.mark, core, tail_end(m, 1)) != c.principal_tail) return "stored tail marks do not match";
  if (c.checked_periods < 2 + static_cast<std::int64_t>(s.w.size())) return "too few tail periods checked";
  for (Label lab : marked_labels(m, s.mark, 0, tail_end(m, c.checked_periods)))
    if (m.act(s.w, TrackPoint{0, lab}) != PointRef{TrackPoint{0, lab}}) return "w moves marked label " + std::to_string(lab);
  if (c.forced_moduli.size() != s.pairs.size()) return "forced moduli do not match the pairs";
  Label g_all = 0;
  for (std::size_t k = 0; k < s.pairs.size(); ++k) {
    const auto [from, to] = s.pairs[k];
    if (m.act(s.w, TrackPoint{0, from}) != PointRef{TrackPoint{0, to}}) return "forcing pair " + std::to_string(from) + " fails";
    if (c.forced_moduli[k] != std::abs(to - from) || c.forced_moduli[k] == 0) return "forced modulus mismatch";
    g_all = std::gcd(g_all, c.forced_moduli[k]);
  }
  if (g_all != 1 || c.gcd != 1) return "gcd of forced moduli is not 1";
  const auto divs = divisors(c.slope);
  if (c.coverage.size() != divs.size()) return "coverage does not list every divisor of the slope";
  for (std::size_t k = 0; k < divs.size(); ++k) {
    const auto& e = c.coverage[k];
    const Label g = divs[k];
    if (e.divisor != g) return "coverage divisor mismatch";
    Label gg = 0;
    for (int idx : e.active_pairs) {
      if (idx < 0 || idx >= static_cast<int>(s.pairs.size())) return "coverage names an unknown pair";
      const Label from = s.pairs[static_cast<std::size_t>(idx)].first;
      if (std::none_of(c.principal_tail.begin(), c.principal_tail.end(), [&](Label lam) { return mod(from - lam, g) == 0; }))
        return "pair marked active for divisor " + std::to_string(g) + " has no marked dart in its class";
      gg = std::gcd(gg, c.forced_moduli[static_cast<std::size_t>(idx)]);
    }
    if (gg == 0) return "no active pair for divisor " + std::to_string(g);
    for (Label n : divisors(gg)) {
      if (n < 2 || std::gcd(n, c.slope) != g) continue;
      const auto it = std::find_if(c.residual_violations.begin(), c.residual_violations.end(),
                                   [&](const auto& rv) { return rv.first == n; });
      if (it == c.residual_violations.end()) return "modulus " + std::to_string(n) + " has no refutation";
      const auto [i, j] = it->second;
      if (mod(i - j, n) != 0) return "refutation pair for " + std::to_string(n) + " is not congruent";
      bool refuted = false;
      for (Gen g2 : {Gen::Y, Gen::X}) {
        const PointRef ii = m.act(g2, 1, TrackPoint{0, i}), jj = m.act(g2, 1, TrackPoint{0, j});
        const auto* yi = on_track(ii);
        const auto* yj = on_track(jj);
        if (yi && yj && mod(yi->index - yj->index, n) != 0) refuted = true;
      }
      if (!refuted) return "refutation pair for " + std::to_string(n) + " does not separate images";
    }
  }
  StabilizerCertificate tmp;
  if (auto fail = finishing_branch(m, tmp)) return fail->reason;
  if (!c.track_and_y_cover || !c.alpha_in_both) return "finishing branch flags not set";
  return std::nullopt;
}

std::optional<std::string> verify_two_track(const CompiledModel& m, const TwoTrackCertificate& c) {
  if (m.track_count() != 2) return "model does not have two tracks";
  if (c.families.size() != 2) return "need one family per track";
  for (const auto& f : c.families) {
    if (!fixes(m, Gen::X, TrackPoint{f.track, f.x_fixed})) return "x does not fix the stored label";
    if (f.period < 1 || mod(f.y_fixed - f.x_fixed, f.period) != 0) return "family is not congruent to the x-fixed label";
    bool in_tail = false;
    for (bool pos : {true, false}) {
      const auto tail = m.track_tail(f.track, pos);
      in_tail |= tail.period == f.period && (pos ? f.y_fixed >= tail.start : f.y_fixed <= tail.start);
    }
    if (!in_tail) return "y-fixed label is not in a tail with the stored period";
    if (!fixes(m, Gen::Y, TrackPoint{f.track, f.y_fixed})) return "y does not fix the stored label";
  }
  for (int t = 0; t < 2; ++t) {
    int across = 0, stay = 0;
    for (const auto& [a, b] : c.crossings) {
      const auto* ta = on_track(a);
      const auto* tb = on_track(b);
      if (!ta || !tb || ta->track != t) continue;
      if (m.act(Gen::Y, 1, a) != b) return "stored crossing is not a y-image";
      (tb->track == t ? stay : across) += 1;
    }
    if (across < 2 || stay < 1) return "missing crossing witnesses on track " + std::to_string(t);
  }
  bool periods_differ = false;
  for (bool pos : {true, false}) periods_differ |= m.track_tail(0, pos).period != m.track_tail(1, pos).period;
  if (periods_differ) return std::nullopt;
  if (c.certified_bound != 2 * core_extent(m) + tail_lcm(m)) return "certified bound mismatch";
  if (c.shift_bound < c.certified_bound) return "shift bound below the certified bound";
  for (Label s = -c.shift_bound; s <= c.shift_bound; ++s) {
    const auto it = std::find_if(c.swap_refutations.begin(), c.swap_refutations.end(),
                                 [&](const auto& r) { return r.first == s; });
    if (it == c.swap_refutations.end()) return "shift " + std::to_string(s) + " is not refuted";
    const PointRef& beta = it->second;
    bool fails = false;
    for (Gen g : {Gen::X, Gen::Y})
      fails |= swap_point(m.act(g, 1, beta), s) != m.act(g, 1, swap_point(beta, s));
    if (!fails) return "stored dart does not refute shift " + std::to_string(s);
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> verify_certificate(const CompiledModel& m, const Certificate& c) {
  if (const auto* f = std::get_if<FixedPointCertificate>(&c)) {
    if (m.track_count() != 1) return "model does not have one track";
    return verify_fixed(m, *f);
  }
  if (const auto* s = std::get_if<StabilizerCertificate>(&c)) return verify_stabilizer(m, *s);
  return verify_two_track(m, std::get<TwoTrackCertificate>(c));
}

PrimitivityVerdict verdict(const CompiledModel& m, const VerdictOptions& opts) {
  if (opts.n_max < 2) throw std::invalid_argument("verdict: n_max must be >= 2");
  if (m.track_count() == 2) return two_track_analysis(m, opts.radius, opts.shift_bound);
  std::string schema_note;
  if (opts.schema) {
    auto r = certify_schema(m, *opts.schema, opts.n_max, opts.radius);
    if (auto* cert = std::get_if<Certificate>(&r)) return Primitive{std::move(*cert)};
    schema_note = "; schema failed: " + std::get<SchemaFailure>(r).reason;
  }
  if (m.has_off_track_darts())
    return Unknown{"loop points present: congruences on the track do not determine the relation" + schema_note, {}};
  Unknown u{"range-limited: every n <= " + std::to_string(opts.n_max) + " violated" + schema_note, {}};
  for (int n = 2; n <= opts.n_max; ++n) {
    const auto r = congruence_test(m, n);
    if (r.invariant) return Imprimitive{n, std::nullopt};
    u.violations.emplace_back(n, *r.violation);
  }
  return u;
}

}  // namespace neumaps
