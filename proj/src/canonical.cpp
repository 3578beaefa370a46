#include "feynhopf/canonical.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>

namespace feynhopf {

namespace {

// Half-edge descriptor relative to a vertex ordering, packed for fast
// lexicographic comparison:
//   type id | my orientation | internal? | partner position | partner orient
// Externals use kind 0 and zero partner fields, internals kind 1.
std::uint64_t pack_descriptor(int type_id, Orient mine, bool internal,
                              int partner_pos, Orient partner) {
  return (std::uint64_t(type_id) << 32) |
         (std::uint64_t(static_cast<int>(mine)) << 24) |
         (std::uint64_t(internal ? 1 : 0) << 16) |
         (std::uint64_t(internal ? partner_pos : 0) << 8) |
         std::uint64_t(internal ? static_cast<int>(partner) : 0);
}

struct Unpacked {
  int type_id;
  Orient mine;
  bool internal;
  int partner_pos;
  Orient partner;
};

Unpacked unpack_descriptor(std::uint64_t d) {
  Unpacked u;
  u.type_id = static_cast<int>(d >> 32);
  u.mine = static_cast<Orient>((d >> 24) & 0xff);
  u.internal = ((d >> 16) & 0xff) != 0;
  u.partner_pos = static_cast<int>((d >> 8) & 0xff);
  u.partner = static_cast<Orient>(d & 0xff);
  return u;
}

struct Workspace {
  const Graph* g;
  bool with_refined;
  std::vector<std::string> type_names;  // sorted unique, defines type ids
  std::vector<int> he_type_id;          // per half-edge slot
  std::vector<int> vclass;              // per vertex: refinement class id (invariant order)
  std::vector<std::vector<int>> classes;  // class id -> vertex slots
};

int refined_of(const Workspace& w, int v) {
  return w.with_refined ? w.g->vertex(v).refined : 0;
}

// Iterated neighborhood refinement. Color ids are assigned in sorted order
// of the color data, so they are invariant under relabeling.
void refine_vertex_classes(Workspace& w) {
  const Graph& g = *w.g;
  int n = g.vertex_count();
  std::vector<std::vector<int>> star(n);
  for (int e = 0; e < g.half_edge_count(); ++e)
    star[g.half_edge(e).vertex].push_back(e);

  // Initial color: refined index plus the multiset of incident
  // (type, orientation, external?) triples.
  std::vector<std::vector<std::uint64_t>> data(n);
  for (int v = 0; v < n; ++v) {
    data[v].push_back(std::uint64_t(refined_of(w, v)));
    std::vector<std::uint64_t> local;
    for (int e : star[v])
      local.push_back(pack_descriptor(w.he_type_id[e], g.half_edge(e).orient,
                                      !g.is_external(e), 0, Orient::none));
    std::sort(local.begin(), local.end());
    data[v].insert(data[v].end(), local.begin(), local.end());
  }

  auto assign = [&](const std::vector<std::vector<std::uint64_t>>& d,
                    std::vector<int>& color) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return d[a] < d[b]; });
    color.assign(n, 0);
    int c = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && d[order[i]] != d[order[i - 1]]) ++c;
      color[order[i]] = c;
    }
    return c + 1;
  };

  std::vector<int> color;
  int ncolors = n == 0 ? 0 : assign(data, color);

  while (true) {
    std::vector<std::vector<std::uint64_t>> next(n);
    for (int v = 0; v < n; ++v) {
      next[v].push_back(std::uint64_t(color[v]));
      std::vector<std::uint64_t> local;
      for (int e : star[v]) {
        if (g.is_external(e)) continue;
        int s = g.sigma(e);
        local.push_back(pack_descriptor(w.he_type_id[e], g.half_edge(e).orient,
                                        true, color[g.half_edge(s).vertex],
                                        g.half_edge(s).orient));
      }
      std::sort(local.begin(), local.end());
      next[v].insert(next[v].end(), local.begin(), local.end());
    }
    std::vector<int> ncolor;
    int m = assign(next, ncolor);
    if (m == ncolors) break;
    color = std::move(ncolor);
    ncolors = m;
  }

  w.vclass = color;
  w.classes.assign(ncolors, {});
  for (int v = 0; v < n; ++v) w.classes[color[v]].push_back(v);
}

// Encoding of the graph under a fixed vertex ordering (vertex slot -> pos):
// per position, the refined index, the degree and the sorted descriptors.
std::vector<std::uint64_t> encode_ordering(const Workspace& w,
                                           const std::vector<int>& pos) {
  const Graph& g = *w.g;
  int n = g.vertex_count();
  std::vector<std::vector<std::uint64_t>> lines(n);
  for (int e = 0; e < g.half_edge_count(); ++e) {
    const auto& he = g.half_edge(e);
    int s = g.sigma(e);
    std::uint64_t d;
    if (s == e) {
      d = pack_descriptor(w.he_type_id[e], he.orient, false, 0, Orient::none);
    } else {
      d = pack_descriptor(w.he_type_id[e], he.orient, true,
                          pos[g.half_edge(s).vertex], g.half_edge(s).orient);
    }
    lines[pos[he.vertex]].push_back(d);
  }
  std::vector<std::uint64_t> out;
  out.reserve(g.half_edge_count() + 2 * n);
  for (int p = 0; p < n; ++p) {
    std::sort(lines[p].begin(), lines[p].end());
    int v = -1;
    for (int q = 0; q < n; ++q)
      if (pos[q] == p) { v = q; break; }
    out.push_back((std::uint64_t(refined_of(w, v)) << 16) |
                  std::uint64_t(lines[p].size()));
    out.insert(out.end(), lines[p].begin(), lines[p].end());
  }
  return out;
}

std::string serialize_key(const Workspace& w,
                          const std::vector<std::uint64_t>& enc) {
  std::ostringstream os;
  os << "g" << w.g->vertex_count() << ":" << w.g->half_edge_count() << "[";
  for (std::size_t i = 0; i < w.type_names.size(); ++i) {
    if (i) os << ",";
    os << w.type_names[i];
  }
  os << "]";
  os << std::hex;
  for (auto x : enc) os << "." << x;
  return os.str();
}

// Rebuild a graph from its winning encoding. Internal pairs are matched
// FIFO per (vertex pair, descriptor) bucket, which makes the result a pure
// function of the encoding.
Graph rebuild(const Workspace& w, const std::vector<std::uint64_t>& enc) {
  Graph out;
  struct Pending {
    int slot;
  };
  std::map<std::tuple<int, int, int, int, int>, std::vector<int>> waiting;
  std::size_t i = 0;
  int nvert = w.g->vertex_count();
  for (int p = 0; p < nvert; ++p) {
    std::uint64_t head = enc[i++];
    int refined = static_cast<int>(head >> 16);
    int deg = static_cast<int>(head & 0xffff);
    out.add_vertex(p, refined);
    for (int k = 0; k < deg; ++k) {
      Unpacked u = unpack_descriptor(enc[i++]);
      int slot = out.add_half_edge(out.half_edge_count(),
                                   w.type_names[u.type_id], u.mine, p);
      if (!u.internal) continue;
      int q = u.partner_pos;
      // A compatible mate waits under the key written from its side.
      auto lookup = std::make_tuple(q, p, u.type_id,
                                    static_cast<int>(u.partner),
                                    static_cast<int>(u.mine));
      auto it = waiting.find(lookup);
      if (it != waiting.end() && !it->second.empty()) {
        int mate = it->second.front();
        it->second.erase(it->second.begin());
        out.pair_half_edges(mate, slot);
      } else {
        waiting[std::make_tuple(p, q, u.type_id, static_cast<int>(u.mine),
                                static_cast<int>(u.partner))]
            .push_back(slot);
      }
    }
  }
  for (auto& [k, v] : waiting)
    if (!v.empty()) throw GraphError("malformed canonical encoding");
  return out;
}

}  // namespace

CanonicalForm canonical_form(const Graph& g, bool with_refined) {
  g.validate();
  Workspace w;
  w.g = &g;
  w.with_refined = with_refined;
  for (int e = 0; e < g.half_edge_count(); ++e)
    w.type_names.push_back(g.half_edge(e).type);
  std::sort(w.type_names.begin(), w.type_names.end());
  w.type_names.erase(std::unique(w.type_names.begin(), w.type_names.end()),
                     w.type_names.end());
  w.he_type_id.resize(g.half_edge_count());
  for (int e = 0; e < g.half_edge_count(); ++e)
    w.he_type_id[e] = static_cast<int>(
        std::lower_bound(w.type_names.begin(), w.type_names.end(),
                         g.half_edge(e).type) -
        w.type_names.begin());

  refine_vertex_classes(w);

  int n = g.vertex_count();
  // Guard the search space; desk-scale graphs stay far below this.
  double perms = 1;
  for (auto& cls : w.classes) {
    for (std::size_t k = 2; k <= cls.size(); ++k) perms *= double(k);
    if (perms > 2e6)
      throw GraphError("graph too symmetric for canonical search");
  }

  // Odometer over within-class permutations; classes occupy consecutive
  // position blocks in invariant order.
  std::vector<std::vector<int>> perm = w.classes;
  std::vector<std::uint64_t> best;
  std::vector<int> best_pos;
  bool first = true;
  while (true) {
    std::vector<int> pos(n, -1);
    int next = 0;
    for (auto& cls : perm)
      for (int v : cls) pos[v] = next++;
    auto enc = encode_ordering(w, pos);
    if (first || enc < best) {
      best = std::move(enc);
      best_pos = pos;
      first = false;
    }
    // advance odometer
    std::size_t c = 0;
    for (; c < perm.size(); ++c) {
      if (std::next_permutation(perm[c].begin(), perm[c].end())) break;
      // wrapped to sorted order; carry to next class
    }
    if (c == perm.size()) break;
  }
  if (first) {  // empty graph
    best = {};
    best_pos = {};
  }

  CanonicalForm cf;
  cf.key = serialize_key(w, best);
  cf.graph = rebuild(w, best);

  // Half-edge map input -> canonical, sigma-compatible. Canonical slots at
  // a position are laid out in sorted-descriptor order; within a run of
  // equal descriptors the rank assignment follows the pairing structure so
  // that the map is an isomorphism.
  int H = g.half_edge_count();
  cf.vertex_map.assign(n, -1);
  for (int v = 0; v < n; ++v) cf.vertex_map[v] = best_pos[v];
  cf.he_map.assign(H, -1);

  // Group input half-edges by (position, descriptor).
  struct Group {
    int pos;
    std::uint64_t desc;
    std::vector<int> members;  // input slots, ascending
    int base = -1;             // first canonical slot of the group
    bool ranked = false;
    std::vector<int> rank;     // rank within group, parallel to members
  };
  std::map<std::pair<int, std::uint64_t>, Group> groups;
  std::vector<std::uint64_t> desc_of(H);
  for (int e = 0; e < H; ++e) {
    const auto& he = g.half_edge(e);
    int s = g.sigma(e);
    std::uint64_t d =
        (s == e) ? pack_descriptor(w.he_type_id[e], he.orient, false, 0,
                                   Orient::none)
                 : pack_descriptor(w.he_type_id[e], he.orient, true,
                                   best_pos[g.half_edge(s).vertex],
                                   g.half_edge(s).orient);
    desc_of[e] = d;
    auto key = std::make_pair(best_pos[he.vertex], d);
    auto& grp = groups[key];
    grp.pos = best_pos[he.vertex];
    grp.desc = d;
    grp.members.push_back(e);
  }
  // Canonical base slot per group: canonical half-edges are consecutive per
  // position in descriptor order.
  {
    int slot = 0;
    int prev_pos = -1;
    for (auto& [key, grp] : groups) {
      (void)key;
      if (grp.pos != prev_pos) prev_pos = grp.pos;
      grp.base = slot;
      slot += static_cast<int>(grp.members.size());
    }
  }
  // Rank members. The mate of group (p, d->q) is (q, d'->p); the FIFO
  // pairing of the rebuild matches equal ranks, so the second group of a
  // mate pair takes its ranks from the partners.
  for (auto& [key, grp] : groups) {
    if (grp.ranked) continue;
    Unpacked u = unpack_descriptor(grp.desc);
    if (!u.internal) {
      grp.rank.resize(grp.members.size());
      std::iota(grp.rank.begin(), grp.rank.end(), 0);
      grp.ranked = true;
      continue;
    }
    int p = grp.pos;
    int q = u.partner_pos;
    std::uint64_t mate_desc = pack_descriptor(u.type_id, u.partner, true, p,
                                              u.mine);
    auto mate_key = std::make_pair(q, mate_desc);
    if (mate_key == key) {
      // Self-paired group (e.g. unoriented self-loops): consecutive ranks
      // pair together in the rebuild, so place each sigma-pair adjacently.
      grp.rank.assign(grp.members.size(), -1);
      int r = 0;
      for (std::size_t i = 0; i < grp.members.size(); ++i) {
        if (grp.rank[i] >= 0) continue;
        int e = grp.members[i];
        int s = g.sigma(e);
        grp.rank[i] = r++;
        auto it = std::find(grp.members.begin(), grp.members.end(), s);
        grp.rank[it - grp.members.begin()] = r++;
      }
      grp.ranked = true;
      continue;
    }
    auto& mate = groups.at(mate_key);
    grp.rank.resize(grp.members.size());
    std::iota(grp.rank.begin(), grp.rank.end(), 0);
    grp.ranked = true;
    // Partner of member with rank r must get rank r in the mate group.
    mate.rank.assign(mate.members.size(), -1);
    for (std::size_t i = 0; i < grp.members.size(); ++i) {
      int s = g.sigma(grp.members[i]);
      auto it = std::find(mate.members.begin(), mate.members.end(), s);
      mate.rank[it - mate.members.begin()] = grp.rank[i];
    }
    mate.ranked = true;
  }
  for (auto& [key, grp] : groups) {
    (void)key;
    for (std::size_t i = 0; i < grp.members.size(); ++i)
      cf.he_map[grp.members[i]] = grp.base + grp.rank[i];
  }

  // Fixed point: a graph that already equals its rebuilt representative
  // keeps identity maps, so values stored on representatives never get
  // twisted by an automorphism.
  if (g.same_structure(cf.graph)) {
    std::iota(cf.he_map.begin(), cf.he_map.end(), 0);
    std::iota(cf.vertex_map.begin(), cf.vertex_map.end(), 0);
  }
  return cf;
}

std::string canonical_key(const Graph& g, bool with_refined) {
  return canonical_form(g, with_refined).key;
}

bool is_isomorphic(const Graph& a, const Graph& b) {
  return canonical_key(a) == canonical_key(b);
}

}  // namespace feynhopf
