#include "tricat/models.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace tricat {

namespace {

// ---------------------------------------------------------------------------
// Generator recipes.  A presentation's label records how it was built, e.g.
// "split(2,1)" or "product(split(2,1),torsion(4,1))", so that products can be
// reassembled componentwise from the same data.
// ---------------------------------------------------------------------------

struct ModelSpec {
  enum class Kind { Split, Torsion, Product };
  Kind kind = Kind::Split;
  Int a = 0;  // split: prime; torsion: modulus
  int b = 0;  // split: max dimension per parity; torsion: max rank per parity
  std::vector<ModelSpec> sub;
};

class SpecParser {
 public:
  explicit SpecParser(const std::string& s) : s_(s) {}

  ModelSpec parse() {
    ModelSpec m = spec();
    skip_ws();
    if (i_ != s_.size()) bad("trailing characters");
    return m;
  }

 private:
  [[noreturn]] void bad(const std::string& why) const {
    fail(ErrKind::ValidationError,
         "model recipe '" + s_ + "': " + why + " (offset " + std::to_string(i_) + ")");
  }
  void skip_ws() {
    while (i_ < s_.size() && s_[i_] == ' ') ++i_;
  }
  void expect(char c) {
    skip_ws();
    if (i_ >= s_.size() || s_[i_] != c) bad(std::string("expected '") + c + "'");
    ++i_;
  }
  std::string ident() {
    skip_ws();
    size_t b = i_;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (b == i_) bad("expected a generator name");
    return s_.substr(b, i_ - b);
  }
  Int number() {
    skip_ws();
    size_t b = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (b == i_ || i_ - b > 6) bad("expected a number");
    return std::stoll(s_.substr(b, i_ - b));
  }
  ModelSpec spec() {
    std::string name = ident();
    ModelSpec m;
    if (name == "split" || name == "torsion") {
      m.kind = name == "split" ? ModelSpec::Kind::Split : ModelSpec::Kind::Torsion;
      expect('(');
      m.a = number();
      expect(',');
      m.b = static_cast<int>(number());
      expect(')');
    } else if (name == "product") {
      m.kind = ModelSpec::Kind::Product;
      expect('(');
      m.sub.push_back(spec());
      expect(',');
      m.sub.push_back(spec());
      expect(')');
    } else {
      bad("unknown generator '" + name + "'");
    }
    return m;
  }

  const std::string& s_;
  size_t i_ = 0;
};

std::string spec_to_string(const ModelSpec& m) {
  switch (m.kind) {
    case ModelSpec::Kind::Split:
      return "split(" + std::to_string(m.a) + "," + std::to_string(m.b) + ")";
    case ModelSpec::Kind::Torsion:
      return "torsion(" + std::to_string(m.a) + "," + std::to_string(m.b) + ")";
    case ModelSpec::Kind::Product:
      return "product(" + spec_to_string(m.sub[0]) + "," + spec_to_string(m.sub[1]) + ")";
  }
  fail(ErrKind::Internal, "unreachable");
}

void check_spec(const ModelSpec& m) {
  switch (m.kind) {
    case ModelSpec::Kind::Split:
      if (m.a != 2 && m.a != 3 && m.a != 5)
        fail(ErrKind::ValidationError, "split generator: prime must be 2, 3, or 5");
      if (m.b < 1 || m.b > 2)
        fail(ErrKind::ValidationError, "split generator: dimension bound must be 1 or 2");
      return;
    case ModelSpec::Kind::Torsion:
      if (m.a != 4) fail(ErrKind::ValidationError, "torsion generator: modulus must be 4");
      if (m.b < 1 || m.b > 2)
        fail(ErrKind::ValidationError, "torsion generator: rank bound must be 1 or 2");
      return;
    case ModelSpec::Kind::Product:
      check_spec(m.sub[0]);
      check_spec(m.sub[1]);
      return;
  }
}

int spec_sectors(const ModelSpec& m) {
  if (m.kind == ModelSpec::Kind::Product) return spec_sectors(m.sub[0]) + spec_sectors(m.sub[1]);
  return 1;
}

// ---------------------------------------------------------------------------
// Backend objects: parity pairs of sorted lists of cyclic summands.  The
// sector tag separates the factors of a product; morphisms never cross
// sectors.  Within one sector all orders are powers of a single prime, so
// sorted sublists are canonical invariant chains.
// ---------------------------------------------------------------------------

struct Summand {
  Int order = 0;
  int sector = 0;
};

bool summand_less(const Summand& x, const Summand& y) {
  if (x.sector != y.sector) return x.sector < y.sector;
  return x.order < y.order;
}

using Piece = std::vector<Summand>;  // kept sorted by summand_less

struct BObj {
  Piece piece[2];
  std::string name;
};

std::string piece_key(const Piece& pc) {
  std::string k;
  for (const Summand& s : pc) k += std::to_string(s.order) + "." + std::to_string(s.sector) + ",";
  return k;
}

std::string object_key(const BObj& o) { return piece_key(o.piece[0]) + "/" + piece_key(o.piece[1]); }

std::vector<BObj> build_objects(const ModelSpec& m, int sector_offset) {
  std::vector<BObj> out;
  if (m.kind == ModelSpec::Kind::Split) {
    int d = m.b;
    for (int a = 0; a <= d; ++a)
      for (int b = 0; b <= d; ++b) {
        BObj o;
        o.piece[0].assign(a, Summand{m.a, sector_offset});
        o.piece[1].assign(b, Summand{m.a, sector_offset});
        o.name = "s" + std::to_string(a) + std::to_string(b);
        out.push_back(std::move(o));
      }
    return out;
  }
  if (m.kind == ModelSpec::Kind::Torsion) {
    std::vector<Piece> options;
    options.push_back({});
    options.push_back({Summand{2, sector_offset}});
    options.push_back({Summand{4, sector_offset}});
    if (m.b >= 2) {
      options.push_back({Summand{2, sector_offset}, Summand{2, sector_offset}});
      options.push_back({Summand{2, sector_offset}, Summand{4, sector_offset}});
      options.push_back({Summand{4, sector_offset}, Summand{4, sector_offset}});
    }
    auto pname = [](const Piece& pc) {
      if (pc.empty()) return std::string("0");
      std::string s;
      for (const Summand& x : pc) s += std::to_string(x.order);
      return s;
    };
    for (const Piece& p0 : options)
      for (const Piece& p1 : options) {
        BObj o;
        o.piece[0] = p0;
        o.piece[1] = p1;
        o.name = "t" + pname(p0) + "_" + pname(p1);
        out.push_back(std::move(o));
      }
    return out;
  }
  // product: componentwise pairs, first factor major.
  std::vector<BObj> left = build_objects(m.sub[0], sector_offset);
  std::vector<BObj> right = build_objects(m.sub[1], sector_offset + spec_sectors(m.sub[0]));
  for (const BObj& l : left)
    for (const BObj& r : right) {
      BObj o;
      for (int par = 0; par < 2; ++par) {
        o.piece[par] = l.piece[par];
        o.piece[par].insert(o.piece[par].end(), r.piece[par].begin(), r.piece[par].end());
      }
      o.name = "(" + l.name + "|" + r.name + ")";
      out.push_back(std::move(o));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Raw Hom structure.  A generator slot (par, i, j) is the cyclic group of
// maps from summand j of X's parity-par piece to summand i of Y's, nonzero
// only within a sector; its order is gcd of the two summand orders.  A map
// with parameter t sends x to (q_dst/g) * t * x.
// ---------------------------------------------------------------------------

struct Slot {
  int par = 0;
  int i = 0;  // target summand position
  int j = 0;  // source summand position
  Int g = 0;  // cyclic order of this slot
};

std::vector<Slot> hom_slots(const BObj& x, const BObj& y) {
  std::vector<Slot> out;
  for (int par = 0; par < 2; ++par)
    for (size_t i = 0; i < y.piece[par].size(); ++i)
      for (size_t j = 0; j < x.piece[par].size(); ++j) {
        const Summand& sy = y.piece[par][i];
        const Summand& sx = x.piece[par][j];
        if (sx.sector != sy.sector) continue;
        out.push_back(Slot{par, static_cast<int>(i), static_cast<int>(j),
                           gcd_ll(sx.order, sy.order)});
      }
  return out;
}

// Dense lookup (par, i, j) -> slot position, -1 when no slot exists.
struct SlotIndex {
  int rows[2] = {0, 0}, cols[2] = {0, 0};
  std::vector<int> tab[2];
  int get(int par, int i, int j) const {
    if (i >= rows[par] || j >= cols[par]) return -1;
    return tab[par][static_cast<size_t>(i) * cols[par] + j];
  }
};

SlotIndex make_slot_index(const BObj& x, const BObj& y, const std::vector<Slot>& slots) {
  SlotIndex si;
  for (int par = 0; par < 2; ++par) {
    si.rows[par] = static_cast<int>(y.piece[par].size());
    si.cols[par] = static_cast<int>(x.piece[par].size());
    si.tab[par].assign(static_cast<size_t>(si.rows[par]) * si.cols[par], -1);
  }
  for (size_t k = 0; k < slots.size(); ++k) {
    const Slot& s = slots[k];
    si.tab[s.par][static_cast<size_t>(s.i) * si.cols[s.par] + s.j] = static_cast<int>(k);
  }
  return si;
}

// Parameter of the composite of single-summand maps q1 -> q2 -> q3 with unit
// parameters.  Same sector means a single prime, so the quotient is exact.
Int comp_coeff(Int q1, Int q2, Int q3) {
  Int g12 = gcd_ll(q1, q2), g23 = gcd_ll(q2, q3), g13 = gcd_ll(q1, q3);
  return ((q2 / g12) * g13 / g23) % g13;
}

// Parameter t of the map Z/q_src -> Z/q_dst, x |-> m*x ; requires the map to
// be well defined (m a multiple of q_dst/g).
Int param_from_int(Int m, Int q_src, Int q_dst) {
  Int g = gcd_ll(q_src, q_dst);
  Int step = q_dst / g;
  m = pmod(m, q_dst);
  if (m % step != 0) fail(ErrKind::Internal, "model generator: map is not well defined");
  return (m / step) % g;
}

std::vector<Int> raw_compose(const BObj& x, const BObj& y, const BObj& z,
                             const std::vector<Slot>& sxy, const std::vector<Slot>& syz,
                             const std::vector<Slot>& sxz, const SlotIndex& ixz,
                             const std::vector<Int>& f, const std::vector<Int>& g) {
  std::vector<Int> out(sxz.size(), 0);
  for (size_t b = 0; b < syz.size(); ++b) {
    if (g[b] == 0) continue;
    const Slot& sg = syz[b];  // y.piece[par][sg.j] -> z.piece[par][sg.i]
    for (size_t a = 0; a < sxy.size(); ++a) {
      if (f[a] == 0) continue;
      const Slot& sf = sxy[a];  // x.piece[par][sf.j] -> y.piece[par][sf.i]
      if (sf.par != sg.par || sf.i != sg.j) continue;
      int k = ixz.get(sf.par, sg.i, sf.j);
      if (k < 0) continue;  // different sectors cannot meet in a composite
      Int c = comp_coeff(x.piece[sf.par][sf.j].order, y.piece[sf.par][sf.i].order,
                         z.piece[sg.par][sg.i].order);
      out[k] = pmod(out[k] + f[a] * g[b] * c, sxz[k].g);
    }
  }
  return out;
}

std::vector<Int> apply_mat(const IntMat& m, const std::vector<Int>& v) {
  std::vector<Int> out(m.rows, 0);
  for (int i = 0; i < m.rows; ++i) {
    Int acc = 0;
    for (int j = 0; j < m.cols; ++j) acc += m.at(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

std::vector<Int> reduce_vs(std::vector<Int> v, const std::vector<Int>& mods) {
  for (size_t i = 0; i < v.size(); ++i)
    if (mods[i] > 0) v[i] = pmod(v[i], mods[i]);
  return v;
}

// ---------------------------------------------------------------------------
// Assembly of the presentation.
// ---------------------------------------------------------------------------

struct PairData {
  std::vector<Slot> slots;
  SlotIndex index;
  Presented pres;  // canonical form of the raw slot factors
};

// Above this many total morphisms the triangle database is built from
// identities, zero maps, and unit-coordinate morphisms only, instead of
// every morphism; keeps the largest generated categories within memory.
constexpr Int kFullConeEnumerationLimit = 20000;

class Assembler {
 public:
  Assembler(std::vector<BObj> objs, std::string label)
      : objs_(std::move(objs)), label_(std::move(label)) {}

  CatPresentation run() {
    n_ = static_cast<int>(objs_.size());
    build_lookup();
    build_homs();
    build_identities();
    build_tensor();
    build_suspension();
    build_triangles();
    build_biproducts();
    ValidationReport rep = validate_presentation(p_);
    if (!rep.ok())
      fail(ErrKind::Internal, "generated presentation failed validation: " + rep.issues.front() +
                                  " (+" + std::to_string(rep.issues.size() - 1) + " more)");
    return std::move(p_);
  }

 private:
  std::vector<Int> raw_factors(const std::vector<Slot>& slots) const {
    std::vector<Int> f;
    f.reserve(slots.size());
    for (const Slot& s : slots) f.push_back(s.g);
    return f;
  }

  void build_lookup() {
    for (int i = 0; i < n_; ++i) id_by_key_[object_key(objs_[i])] = i;
  }

  void build_homs() {
    p_.label = label_;
    p_.objects.resize(n_);
    for (int i = 0; i < n_; ++i) p_.objects[i] = objs_[i].name;
    p_.hom.resize(static_cast<size_t>(n_) * n_);
    p_.tensor.resize(static_cast<size_t>(n_) * n_ * n_);
    p_.identity_coords.resize(n_);
    p_.sigma.resize(n_);
    p_.susp.resize(static_cast<size_t>(n_) * n_);
    pd_.resize(static_cast<size_t>(n_) * n_);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        PairData& d = pd_[p_.pidx(a, b)];
        d.slots = hom_slots(objs_[a], objs_[b]);
        d.index = make_slot_index(objs_[a], objs_[b], d.slots);
        std::vector<Int> rf = raw_factors(d.slots);
        IntMat diag(static_cast<int>(rf.size()), static_cast<int>(rf.size()));
        for (size_t i = 0; i < rf.size(); ++i) diag.at(static_cast<int>(i), static_cast<int>(i)) = rf[i];
        d.pres = presentation_to_group(diag, static_cast<int>(rf.size()));
        p_.hom[p_.pidx(a, b)] = d.pres.group;
      }
  }

  // canonical coordinates of a raw slot vector
  std::vector<Int> to_canon(int a, int b, const std::vector<Int>& raw) const {
    const PairData& d = pd_[p_.pidx(a, b)];
    return make_element(d.pres.group, apply_mat(d.pres.proj, raw)).coords;
  }

  // raw slot vector of canonical coordinates
  std::vector<Int> to_raw(int a, int b, const std::vector<Int>& canon) const {
    const PairData& d = pd_[p_.pidx(a, b)];
    std::vector<Int> raw = apply_mat(d.pres.section, canon);
    std::vector<Int> mods = raw_factors(d.slots);
    return reduce_vs(std::move(raw), mods);
  }

  void build_identities() {
    for (int a = 0; a < n_; ++a) {
      const PairData& d = pd_[p_.pidx(a, a)];
      std::vector<Int> raw(d.slots.size(), 0);
      for (size_t k = 0; k < d.slots.size(); ++k)
        if (d.slots[k].i == d.slots[k].j) raw[k] = 1;
      p_.identity_coords[a] = to_canon(a, a, raw);
    }
  }

  void build_tensor() {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c) {
          const PairData& dab = pd_[p_.pidx(a, b)];
          const PairData& dbc = pd_[p_.pidx(b, c)];
          const PairData& dac = pd_[p_.pidx(a, c)];
          int rab = p_.homg(a, b).rank();
          int rbc = p_.homg(b, c).rank();
          int rac = p_.homg(a, c).rank();
          std::vector<Int> t(static_cast<size_t>(rac) * rab * rbc, 0);
          for (int i = 0; i < rab; ++i) {
            std::vector<Int> ci(rab, 0);
            ci[i] = 1;
            std::vector<Int> rawf = to_raw(a, b, ci);
            for (int j = 0; j < rbc; ++j) {
              std::vector<Int> cj(rbc, 0);
              cj[j] = 1;
              std::vector<Int> rawg = to_raw(b, c, cj);
              std::vector<Int> rawh = raw_compose(objs_[a], objs_[b], objs_[c], dab.slots,
                                                  dbc.slots, dac.slots, dac.index, rawf, rawg);
              std::vector<Int> ch = to_canon(a, c, rawh);
              for (int k = 0; k < rac; ++k)
                t[(static_cast<size_t>(k) * rab + i) * rbc + j] = ch[k];
            }
          }
          p_.tensor[p_.tidx(a, b, c)] = std::move(t);
        }
  }

  void build_suspension() {
    for (int x = 0; x < n_; ++x) {
      BObj sw;
      sw.piece[0] = objs_[x].piece[1];
      sw.piece[1] = objs_[x].piece[0];
      auto it = id_by_key_.find(object_key(sw));
      if (it == id_by_key_.end())
        fail(ErrKind::Internal, "model generator: parity swap left the object range");
      p_.sigma[x] = it->second;
    }
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        int sa = p_.sigma[a], sb = p_.sigma[b];
        const PairData& src = pd_[p_.pidx(a, b)];
        const PairData& dst = pd_[p_.pidx(sa, sb)];
        // slot (par, i, j) -> slot (1-par, i, j); positions carry over since
        // the parity pieces swap wholesale.
        IntMat praw(static_cast<int>(dst.slots.size()), static_cast<int>(src.slots.size()));
        for (size_t k = 0; k < src.slots.size(); ++k) {
          const Slot& s = src.slots[k];
          int t = dst.index.get(1 - s.par, s.i, s.j);
          if (t < 0) fail(ErrKind::Internal, "model generator: suspension slot missing");
          praw.at(t, static_cast<int>(k)) = 1;
        }
        IntMat m = mat_mul(dst.pres.proj, mat_mul(praw, src.pres.section));
        const std::vector<Int>& fac = p_.homg(sa, sb).factors;
        for (int r = 0; r < m.rows; ++r)
          for (int c = 0; c < m.cols; ++c)
            if (fac[r] > 0) m.at(r, c) = pmod(m.at(r, c), fac[r]);
        p_.susp[p_.pidx(a, b)] = make_hom(p_.homg(a, b), p_.homg(sa, sb), std::move(m));
      }
  }

  // --- canonical split cone of one morphism -------------------------------

  struct ConeEntry {
    Summand s;
    int kind = 0;     // 0 = cokernel part, 1 = shifted kernel part
    int par_src = 0;  // parity of the block it came from
    int row = 0;      // row in that block's kernel/cokernel group
  };

  struct BlockInfo {
    std::vector<int> xs, ys;  // global summand positions (source / target)
    KernelResult ker{FinAbGroup{}, GroupHom{}};
    CokernelResult cok{FinAbGroup{}, GroupHom{}};
  };

  // Blocks of f : X -> Y per (parity, sector), with kernels and cokernels.
  std::map<std::pair<int, int>, BlockInfo> cone_blocks(int xo, int yo,
                                                       const std::vector<Int>& raw) const {
    const BObj& X = objs_[xo];
    const BObj& Y = objs_[yo];
    const PairData& d = pd_[p_.pidx(xo, yo)];
    std::map<std::pair<int, int>, BlockInfo> blocks;
    for (int par = 0; par < 2; ++par) {
      std::set<int> sectors;
      for (const Summand& s : X.piece[par]) sectors.insert(s.sector);
      for (const Summand& s : Y.piece[par]) sectors.insert(s.sector);
      for (int sec : sectors) {
        BlockInfo bi;
        for (size_t j = 0; j < X.piece[par].size(); ++j)
          if (X.piece[par][j].sector == sec) bi.xs.push_back(static_cast<int>(j));
        for (size_t i = 0; i < Y.piece[par].size(); ++i)
          if (Y.piece[par][i].sector == sec) bi.ys.push_back(static_cast<int>(i));
        std::vector<Int> domf, codf;
        for (int j : bi.xs) domf.push_back(X.piece[par][j].order);
        for (int i : bi.ys) codf.push_back(Y.piece[par][i].order);
        IntMat m(static_cast<int>(bi.ys.size()), static_cast<int>(bi.xs.size()));
        for (size_t r = 0; r < bi.ys.size(); ++r)
          for (size_t c = 0; c < bi.xs.size(); ++c) {
            int k = d.index.get(par, bi.ys[r], bi.xs[c]);
            if (k < 0) continue;
            Int q = Y.piece[par][bi.ys[r]].order;
            m.at(static_cast<int>(r), static_cast<int>(c)) =
                pmod((q / d.slots[k].g) * raw[k], q);
          }
        GroupHom h = make_hom(make_group(domf), make_group(codf), std::move(m));
        bi.ker = kernel(h);
        bi.cok = cokernel(h);
        blocks[{par, sec}] = std::move(bi);
      }
    }
    return blocks;
  }

  // The canonical split triangle on f, if its third object stays in range.
  std::optional<Triangle> cone_of(int xo, int yo, const GroupElement& f) const {
    std::vector<Int> raw = to_raw(xo, yo, f.coords);
    auto blocks = cone_blocks(xo, yo, raw);

    BObj cone_obj;
    std::vector<ConeEntry> entries[2];
    for (int par = 0; par < 2; ++par) {
      for (const auto& [key, bi] : blocks) {
        auto [bpar, sec] = key;
        if (bpar == par)  // cokernel of f_par stays in this parity
          for (size_t r = 0; r < bi.cok.group.factors.size(); ++r)
            entries[par].push_back(ConeEntry{Summand{bi.cok.group.factors[r], sec}, 0, bpar,
                                             static_cast<int>(r)});
        if (bpar == 1 - par)  // kernel of f_{1-par} lands here after the shift
          for (size_t r = 0; r < bi.ker.group.factors.size(); ++r)
            entries[par].push_back(ConeEntry{Summand{bi.ker.group.factors[r], sec}, 1, bpar,
                                             static_cast<int>(r)});
      }
      std::stable_sort(entries[par].begin(), entries[par].end(),
                       [](const ConeEntry& a, const ConeEntry& b) {
                         return summand_less(a.s, b.s);
                       });
      for (const ConeEntry& e : entries[par]) cone_obj.piece[par].push_back(e.s);
    }
    auto it = id_by_key_.find(object_key(cone_obj));
    if (it == id_by_key_.end()) return std::nullopt;
    int co = it->second;

    const BObj& X = objs_[xo];
    const BObj& Y = objs_[yo];
    const PairData& dyc = pd_[p_.pidx(yo, co)];
    const PairData& dcs = pd_[p_.pidx(co, p_.sigma[xo])];

    std::vector<Int> rawg(dyc.slots.size(), 0);
    std::vector<Int> rawh(dcs.slots.size(), 0);
    for (int par = 0; par < 2; ++par)
      for (size_t pos = 0; pos < entries[par].size(); ++pos) {
        const ConeEntry& e = entries[par][pos];
        const BlockInfo& bi = blocks.at({e.par_src, e.s.sector});
        if (e.kind == 0) {
          // quotient map Y -> coker on this block
          for (size_t c = 0; c < bi.ys.size(); ++c) {
            Int m = bi.cok.proj.m.at(e.row, static_cast<int>(c));
            Int q_src = Y.piece[par][bi.ys[c]].order;
            Int t = param_from_int(m, q_src, e.s.order);
            if (t == 0) continue;
            int k = dyc.index.get(par, static_cast<int>(pos), bi.ys[c]);
            if (k < 0) fail(ErrKind::Internal, "model generator: cone slot missing");
            rawg[k] = t;
          }
        } else {
          // inclusion ker -> X_{1-par} viewed inside (sigma X)_par
          for (size_t c = 0; c < bi.xs.size(); ++c) {
            Int m = bi.ker.incl.m.at(static_cast<int>(c), e.row);
            Int q_dst = X.piece[1 - par][bi.xs[c]].order;
            Int t = param_from_int(m, e.s.order, q_dst);
            if (t == 0) continue;
            int k = dcs.index.get(par, bi.xs[c], static_cast<int>(pos));
            if (k < 0) fail(ErrKind::Internal, "model generator: cone slot missing");
            rawh[k] = t;
          }
        }
      }

    Triangle t;
    t.x = xo;
    t.y = yo;
    t.z = co;
    t.f = Morphism{xo, yo, f};
    t.g = Morphism{yo, co, make_element(p_.homg(yo, co), to_canon(yo, co, rawg))};
    t.h = Morphism{co, p_.sigma[xo],
                   make_element(p_.homg(co, p_.sigma[xo]), to_canon(co, p_.sigma[xo], rawh))};
    return t;
  }

  std::vector<Int> triangle_key(const Triangle& t) const {
    std::vector<Int> k{t.x, t.y, t.z};
    k.insert(k.end(), t.f.elem.coords.begin(), t.f.elem.coords.end());
    k.insert(k.end(), t.g.elem.coords.begin(), t.g.elem.coords.end());
    k.insert(k.end(), t.h.elem.coords.begin(), t.h.elem.coords.end());
    return k;
  }

  void build_triangles() {
    Int total = 0;
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) total += p_.homg(a, b).order();
    bool full = total <= kFullConeEnumerationLimit;

    std::set<std::vector<Int>> seen;
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        std::vector<GroupElement> base;
        if (full) {
          base = enumerate_elements(p_.homg(a, b));
        } else {
          // zero map, unit-coordinate morphisms, and the identity
          base.push_back(zero_element(p_.homg(a, b)));
          for (int i = 0; i < p_.homg(a, b).rank(); ++i) {
            std::vector<Int> e(p_.homg(a, b).rank(), 0);
            e[i] = 1;
            base.push_back(make_element(p_.homg(a, b), e));
          }
          if (a == b) base.push_back(make_element(p_.homg(a, a), p_.identity_coords[a]));
        }
        for (const GroupElement& f : base) {
          auto t0 = cone_of(a, b, f);
          if (!t0) continue;
          Triangle t = *t0;
          for (int r = 0; r < 6; ++r) {
            auto key = triangle_key(t);
            if (seen.insert(key).second) p_.triangles.push_back(t);
            t = rotate(p_, t);
          }
        }
      }
    std::sort(p_.triangles.begin(), p_.triangles.end(), [&](const Triangle& s, const Triangle& t) {
      return triangle_key(s) < triangle_key(t);
    });
  }

  void build_biproducts() {
    struct Tagged {
      Summand s;
      int src = 0;  // 0 = left input, 1 = right input
      int idx = 0;  // position in that input's piece
    };
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        BObj un;
        std::vector<Tagged> tags[2];
        for (int par = 0; par < 2; ++par) {
          for (size_t j = 0; j < objs_[a].piece[par].size(); ++j)
            tags[par].push_back(Tagged{objs_[a].piece[par][j], 0, static_cast<int>(j)});
          for (size_t j = 0; j < objs_[b].piece[par].size(); ++j)
            tags[par].push_back(Tagged{objs_[b].piece[par][j], 1, static_cast<int>(j)});
          std::stable_sort(tags[par].begin(), tags[par].end(),
                           [](const Tagged& x, const Tagged& y) { return summand_less(x.s, y.s); });
          for (const Tagged& t : tags[par]) un.piece[par].push_back(t.s);
        }
        auto it = id_by_key_.find(object_key(un));
        if (it == id_by_key_.end()) continue;
        int c = it->second;

        const PairData& dac = pd_[p_.pidx(a, c)];
        const PairData& dca = pd_[p_.pidx(c, a)];
        const PairData& dbc = pd_[p_.pidx(b, c)];
        const PairData& dcb = pd_[p_.pidx(c, b)];
        std::vector<Int> ri1(dac.slots.size(), 0), rp1(dca.slots.size(), 0);
        std::vector<Int> ri2(dbc.slots.size(), 0), rp2(dcb.slots.size(), 0);
        for (int par = 0; par < 2; ++par)
          for (size_t pos = 0; pos < tags[par].size(); ++pos) {
            const Tagged& t = tags[par][pos];
            if (t.src == 0) {
              int k = dac.index.get(par, static_cast<int>(pos), t.idx);
              int l = dca.index.get(par, t.idx, static_cast<int>(pos));
              if (k < 0 || l < 0) fail(ErrKind::Internal, "model generator: biproduct slot missing");
              ri1[k] = 1;
              rp1[l] = 1;
            } else {
              int k = dbc.index.get(par, static_cast<int>(pos), t.idx);
              int l = dcb.index.get(par, t.idx, static_cast<int>(pos));
              if (k < 0 || l < 0) fail(ErrKind::Internal, "model generator: biproduct slot missing");
              ri2[k] = 1;
              rp2[l] = 1;
            }
          }
        Biproduct bp;
        bp.obj = c;
        bp.i1 = Morphism{a, c, make_element(p_.homg(a, c), to_canon(a, c, ri1))};
        bp.i2 = Morphism{b, c, make_element(p_.homg(b, c), to_canon(b, c, ri2))};
        bp.p1 = Morphism{c, a, make_element(p_.homg(c, a), to_canon(c, a, rp1))};
        bp.p2 = Morphism{c, b, make_element(p_.homg(c, b), to_canon(c, b, rp2))};
        p_.biproducts[{a, b}] = std::move(bp);
      }
  }

  std::vector<BObj> objs_;
  std::string label_;
  int n_ = 0;
  CatPresentation p_;
  std::vector<PairData> pd_;
  std::map<std::string, int> id_by_key_;
};

CatPresentation build_from_spec(const ModelSpec& m) {
  check_spec(m);
  return Assembler(build_objects(m, 0), spec_to_string(m)).run();
}

}  // namespace

CatPresentation gen_split_graded(Int p, int d) {
  ModelSpec m;
  m.kind = ModelSpec::Kind::Split;
  m.a = p;
  m.b = d;
  return build_from_spec(m);
}

CatPresentation gen_torsion_split(Int n, int maxrank) {
  ModelSpec m;
  m.kind = ModelSpec::Kind::Torsion;
  m.a = n;
  m.b = maxrank;
  return build_from_spec(m);
}

bool is_model_label(const std::string& label) {
  try {
    ModelSpec m = SpecParser(label).parse();
    check_spec(m);
    return true;
  } catch (const Error&) {
    return false;
  }
}

CatPresentation gen_from_label(const std::string& label) {
  return build_from_spec(SpecParser(label).parse());
}

ModelFixture gen_product(const CatPresentation& p1, const CatPresentation& p2) {
  if (!is_model_label(p1.label) || !is_model_label(p2.label))
    fail(ErrKind::ValidationError,
         "product generator: both factors must carry a generator recipe label");
  if (!(gen_from_label(p1.label) == p1) || !(gen_from_label(p2.label) == p2))
    fail(ErrKind::ValidationError,
         "product generator: factor presentation differs from its recipe");

  ModelSpec m;
  m.kind = ModelSpec::Kind::Product;
  m.sub.push_back(SpecParser(p1.label).parse());
  m.sub.push_back(SpecParser(p2.label).parse());

  ModelFixture fx;
  fx.pres = build_from_spec(m);

  int n1 = p1.size(), n2 = p2.size();
  int n = fx.pres.size();
  fx.lb.resize(n);
  fx.lperp.resize(n);
  fx.loc_order.resize(static_cast<size_t>(n) * n);
  fx.coloc_order.resize(static_cast<size_t>(n) * n);
  for (int i1 = 0; i1 < n1; ++i1) fx.thick_gens.push_back(i1 * n2);
  for (int i1 = 0; i1 < n1; ++i1)
    for (int i2 = 0; i2 < n2; ++i2) {
      fx.lb[i1 * n2 + i2] = i2;           // (0, B2)
      fx.lperp[i1 * n2 + i2] = i1 * n2;   // (B1, 0)
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int a1 = a / n2, a2 = a % n2, b1 = b / n2, b2 = b % n2;
      fx.loc_order[fx.pres.pidx(a, b)] = p2.homg(a2, b2).order();
      fx.coloc_order[fx.pres.pidx(a, b)] = p1.homg(a1, b1).order();
    }
  return fx;
}

}  // namespace tricat
