// Generates the shipped firing-squad table (data/squad.rule, data/squad.manifest
// and src/squad/squad_table.inc).
//
// The squad is described at the signal level: every cell carries a set of
// signals (fast bouncing signal, slow third-speed signal) and a boundary flag.
// A segment with an active end sends both signals away from that end; the
// reflected fast signal meets the slow one in the middle, which becomes the
// active end of both halves. When every cell is a boundary the squad fires.
//
// The radius-1 table is the restriction of that signal machine to the windows
// that occur while firing wall-delimited segments; every other window maps to
// the error state. Windows with the error state map to it (spreading), and the
// firing state survives only in an all-firing window.
//
// An all-boundary window does not fire directly: it enters a countdown of
// ready states, and a ready cell fires only inside a uniform ready window.
// Any non-uniform window holding a ready state becomes the error state, so a
// segment that finishes out of step with its neighbour is eroded from its
// border before any of it fires.

#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace {

struct Cell {
    bool boundary = false;
    bool fast_r = false, fast_l = false;   // outbound fast signal
    bool back_r = false, back_l = false;   // reflected fast signal
    int8_t slow_r = -1, slow_l = -1;       // slow signal phase, -1 = absent

    auto key() const { return std::tie(boundary, fast_r, fast_l, back_r, back_l, slow_r, slow_l); }
    bool operator<(const Cell& o) const { return key() < o.key(); }
    bool operator==(const Cell& o) const { return key() == o.key(); }
};

bool emits_right(const Cell& c) { return c.boundary && c.slow_r == 0; }
bool emits_left(const Cell& c) { return c.boundary && c.slow_l == 0; }

Cell fresh_boundary(bool right, bool left) {
    Cell c;
    c.boundary = true;
    if (right) c.slow_r = 0;
    if (left) c.slow_l = 0;
    return c;
}

// Signal-level transition; the caller handles firing.
Cell next(const Cell& l, const Cell& c, const Cell& r) {
    if (!c.boundary) {
        if (c.slow_r >= 0 && !r.boundary && r.back_l) return fresh_boundary(false, true);
        if (c.back_l && !l.boundary && l.slow_r >= 0) return fresh_boundary(true, false);
        if (c.slow_l >= 0 && !l.boundary && l.back_r) return fresh_boundary(true, false);
        if (c.back_r && !r.boundary && r.slow_l >= 0) return fresh_boundary(false, true);
    }
    Cell n;
    n.boundary = c.boundary;
    n.fast_r = (!l.boundary && l.fast_r) || emits_right(l);
    n.fast_l = (!r.boundary && r.fast_l) || emits_left(r);
    if (!c.boundary) {
        n.back_l = (!r.boundary && r.back_l) || (r.boundary && r.fast_r);
        n.back_r = (!l.boundary && l.back_r) || (l.boundary && l.fast_l);
    }
    if (c.slow_r == 0 || c.slow_r == 1) n.slow_r = static_cast<int8_t>(c.slow_r + 1);
    else if (l.slow_r == 2) n.slow_r = 0;
    if (c.slow_l == 0 || c.slow_l == 1) n.slow_l = static_cast<int8_t>(c.slow_l + 1);
    else if (r.slow_l == 2) n.slow_l = 0;
    if (!c.boundary && ((n.slow_r >= 0 && n.back_l) || (n.slow_l >= 0 && n.back_r)))
        return fresh_boundary(true, true);
    return n;
}

std::string name(const Cell& c) {
    std::string s = c.boundary ? "B" : "I";
    if (c.fast_r) s += ">";
    if (c.fast_l) s += "<";
    if (c.back_r) s += "r";
    if (c.back_l) s += "l";
    if (c.slow_r >= 0) s += "s" + std::to_string(c.slow_r);
    if (c.slow_l >= 0) s += "t" + std::to_string(c.slow_l);
    return s;
}

constexpr int kFire = -1;

// Simulates the seed wall | general | quiet^(n-1) (period n+1), recording
// windows. Returns the firing time.
int simulate(int n, std::map<std::array<Cell, 3>, int>& windows, std::map<Cell, int>& ids,
             std::vector<Cell>& order) {
    auto id_of = [&](const Cell& c) {
        auto it = ids.find(c);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(order.size());
        ids.emplace(c, id);
        order.push_back(c);
        return id;
    };
    const int p = n + 1;
    std::vector<Cell> x(p);
    x[0] = fresh_boundary(false, false);
    x[1] = fresh_boundary(true, false);
    for (int t = 0; t < 8 * n + 16; ++t) {
        bool all_boundary = true;
        for (auto& c : x) all_boundary = all_boundary && c.boundary;
        std::vector<Cell> y(p);
        for (int i = 0; i < p; ++i) {
            const Cell& l = x[(i + p - 1) % p];
            const Cell& r = x[(i + 1) % p];
            std::array<Cell, 3> w{l, x[i], r};
            id_of(l);
            id_of(x[i]);
            id_of(r);
            if (l.boundary && x[i].boundary && r.boundary) {
                windows[w] = kFire;
                continue;
            }
            y[i] = next(l, x[i], r);
            int out = id_of(y[i]);
            auto [it, fresh] = windows.emplace(w, out);
            if (!fresh && it->second != out) {
                std::cerr << "inconsistent window\n";
                std::exit(1);
            }
        }
        if (all_boundary) return t + 1;
        x = std::move(y);
    }
    std::cerr << "segment " << n << " never fired\n";
    std::exit(1);
}

char digit(int v) { return static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10)); }

}  // namespace

int main(int argc, char** argv) {
    int max_n = argc > 1 ? std::stoi(argv[1]) : 64;
    std::string out_dir = argc > 2 ? argv[2] : ".";
    const int ready_stages = 3;

    std::map<std::array<Cell, 3>, int> windows;
    std::map<Cell, int> ids;
    std::vector<Cell> order;
    // Fixed indices for the named states.
    Cell quiet;
    Cell general = fresh_boundary(true, false);
    Cell wall = fresh_boundary(false, false);
    for (const Cell& c : {quiet, general, wall}) {
        ids.emplace(c, static_cast<int>(order.size()));
        order.push_back(c);
    }
    std::vector<int> times;
    for (int n = 2; n <= max_n; ++n) times.push_back(simulate(n, windows, ids, order));
    const size_t saturated = windows.size();
    std::map<std::array<Cell, 3>, int> probe = windows;
    for (int n = max_n + 1; n <= 2 * max_n; ++n) simulate(n, probe, ids, order);
    if (probe.size() != saturated) {
        std::cerr << "window set not saturated at n=" << max_n << ": " << saturated << " vs "
                  << probe.size() << "\n";
        return 1;
    }

    const int signal_states = static_cast<int>(order.size());
    const int ready0 = signal_states;
    const int gamma = signal_states + ready_stages;
    const int kappa = gamma + 1;
    const int size = kappa + 1;
    auto is_ready = [&](int s) { return s >= ready0 && s < gamma; };
    std::cerr << "states: " << size << " windows: " << saturated << "\n";
    for (int i = 0; i < signal_states; ++i) std::cerr << "  " << digit(i) << " " << name(order[i]) << "\n";
    std::cerr << "t(n):";
    for (size_t i = 0; i < times.size() && i < 40; ++i) std::cerr << " " << times[i];
    std::cerr << "\n";

    std::string table(static_cast<size_t>(size) * size * size, digit(kappa));
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b)
            for (int c = 0; c < size; ++c) {
                size_t idx = (static_cast<size_t>(a) * size + b) * size + c;
                int out = kappa;
                bool has_kappa = a == kappa || b == kappa || c == kappa;
                bool has_gamma = a == gamma || b == gamma || c == gamma;
                bool has_ready = is_ready(a) || is_ready(b) || is_ready(c);
                if (has_kappa) {
                    out = kappa;
                } else if (has_gamma) {
                    out = (a == gamma && b == gamma && c == gamma) ? gamma : kappa;
                } else if (has_ready) {
                    out = (a == b && b == c) ? b + 1 : kappa;
                } else {
                    auto it = windows.find({order[a], order[b], order[c]});
                    if (it != windows.end()) out = it->second == kFire ? ready0 : it->second;
                }
                table[idx] = digit(out);
            }

    std::ostringstream rule;
    rule << "alphabet: " << size << "\nradius: 1\nkind: table\ntable: " << table << "\n";
    std::ostringstream manifest;
    manifest << "rule: squad.rule\ngamma: " << gamma << "\nkappa: " << kappa
             << "\nquiet: 0\ngeneral: 1\nwall: 2\n";

    std::ofstream(out_dir + "/data/squad.rule") << rule.str();
    std::ofstream(out_dir + "/data/squad.manifest") << manifest.str();
    std::ofstream inc(out_dir + "/src/squad/squad_table.inc");
    inc << "// Generated by tools/gen_squad.cpp; do not edit.\n";
    inc << "constexpr int kSquadAlphabet = " << size << ";\n";
    inc << "constexpr int kSquadGamma = " << gamma << ";\n";
    inc << "constexpr int kSquadKappa = " << kappa << ";\n";
    inc << "constexpr int kSquadReadyStages = " << ready_stages << ";\n";
    inc << "constexpr int kSquadQuiet = 0;\nconstexpr int kSquadGeneral = 1;\nconstexpr int kSquadWall = 2;\n";
    inc << "constexpr const char* kSquadTable =\n";
    for (size_t i = 0; i < table.size(); i += 100) inc << "    \"" << table.substr(i, 100) << "\"\n";
    inc << "    ;\n";
    return 0;
}
