#pragma once

#include "klm_sequence.hpp"

#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace klm {

// Text format, one directive per line, '#' starts a comment:
//   dim <d>
//   state <name>
//   init <name>
//   out <name>
//   trans <name> <src> <tgt> <z_1> ... <z_d>
inline vass parse_vass(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> dim;
    std::vector<std::string> states;
    std::optional<std::string> init, out;
    std::vector<transition_spec> ts;
    std::vector<std::size_t> trans_line;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string w; ls >> w;) tok.push_back(w);
        if (tok.empty()) continue;
        const auto& kw = tok[0];
        auto want = [&](std::size_t n) {
            if (tok.size() != n) throw parse_error(lineno, "'" + kw + "' expects " + std::to_string(n - 1) + " argument(s)");
        };
        if (kw == "dim") {
            want(2);
            if (dim) throw parse_error(lineno, "duplicate 'dim'");
            try {
                std::size_t pos = 0;
                long v = std::stol(tok[1], &pos);
                if (pos != tok[1].size() || v < 0) throw std::invalid_argument("");
                dim = static_cast<std::size_t>(v);
            } catch (const std::exception&) {
                throw parse_error(lineno, "bad dimension '" + tok[1] + "'");
            }
        } else if (kw == "state") {
            want(2);
            states.push_back(tok[1]);
        } else if (kw == "init") {
            want(2);
            if (init) throw parse_error(lineno, "duplicate 'init'");
            init = tok[1];
        } else if (kw == "out") {
            want(2);
            if (out) throw parse_error(lineno, "duplicate 'out'");
            out = tok[1];
        } else if (kw == "trans") {
            if (!dim) throw parse_error(lineno, "'trans' before 'dim'");
            want(4 + *dim);
            action a;
            for (std::size_t i = 0; i < *dim; ++i) {
                integer v;
                if (v.set_str(tok[4 + i], 10) != 0) throw parse_error(lineno, "bad integer '" + tok[4 + i] + "'");
                a.push_back(v);
            }
            ts.push_back({tok[1], tok[2], tok[3], a});
            trans_line.push_back(lineno);
        } else {
            throw parse_error(lineno, "unknown directive '" + kw + "'");
        }
    }
    if (!dim) throw parse_error(lineno, "missing 'dim'");
    if (!init) throw parse_error(lineno, "missing 'init'");
    if (!out) throw parse_error(lineno, "missing 'out'");
    std::set<std::string> known(states.begin(), states.end());
    if (known.size() != states.size()) throw parse_error(lineno, "duplicate state");
    if (!known.count(*init)) throw parse_error(lineno, "unknown init state '" + *init + "'");
    if (!known.count(*out)) throw parse_error(lineno, "unknown out state '" + *out + "'");
    for (std::size_t k = 0; k < ts.size(); ++k)
        if (!known.count(ts[k].src) || !known.count(ts[k].tgt))
            throw parse_error(trans_line[k], "transition '" + ts[k].name + "' uses an unknown state");
    try {
        return make_vass(*dim, states, *init, *out, ts);
    } catch (const invalid_vass& e) {
        throw parse_error(lineno, e.what());
    }
}

inline std::string render_vass(const vass& g) {
    std::string s = "dim " + std::to_string(g.dim) + "\n";
    for (const auto& q : g.states) s += "state " + q + "\n";
    s += "init " + g.states[g.in] + "\n";
    s += "out " + g.states[g.out] + "\n";
    for (const auto& t : g.transitions) {
        s += "trans " + t.name + " " + g.states[t.src] + " " + g.states[t.tgt];
        for (const auto& v : t.delta) s += " " + v.get_str();
        s += "\n";
    }
    return s;
}

// "0,0,2", "(0,w,2)" or "0 w 2"; 'w' and 'omega' stand for omega.
inline omega_config parse_config(const std::string& lit, bool allow_omega = true) {
    std::string s;
    for (char ch : lit) s += (ch == '(' || ch == ')' || ch == ',') ? ' ' : ch;
    std::istringstream in(s);
    omega_config c;
    for (std::string w; in >> w;) {
        if (w == "w" || w == "omega") {
            if (!allow_omega) throw parse_error(1, "omega not allowed in '" + lit + "'");
            c.push_back(nat_omega::omega());
            continue;
        }
        integer v;
        if (v.set_str(w, 10) != 0 || v < 0) throw parse_error(1, "bad configuration entry '" + w + "'");
        c.emplace_back(v);
    }
    return c;
}

inline action parse_action(const std::string& lit) {
    std::string s;
    for (char ch : lit) s += (ch == '(' || ch == ')' || ch == ',') ? ' ' : ch;
    std::istringstream in(s);
    action a;
    for (std::string w; in >> w;) {
        integer v;
        if (v.set_str(w, 10) != 0) throw parse_error(1, "bad action entry '" + w + "'");
        a.push_back(v);
    }
    return a;
}

inline std::string render_word(const std::vector<action>& w) {
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += " ";
        s += render(w[k]);
    }
    return s;
}

// [x]{G}[y] a [x']{G'}[y'] ...; name_of gives the text used for each VASS.
inline std::string render_sequence(const klm_sequence& s, const std::function<std::string(const vass&)>& name_of) {
    std::string out;
    for (std::size_t j = 0; j < s.triples.size(); ++j) {
        if (j) out += " " + render(s.connectors[j - 1]) + " ";
        const auto& t = s.triples[j];
        out += "[" + render(t.x).substr(1, render(t.x).size() - 2) + "]{" + name_of(t.g) + "}[" +
               render(t.y).substr(1, render(t.y).size() - 2) + "]";
    }
    return out;
}

// Canonical text of a sequence with every VASS spelled out inline.
inline std::string canonical_key(const klm_sequence& s) {
    return render_sequence(s, [](const vass& g) {
        std::string b = render_vass(g);
        for (auto& ch : b)
            if (ch == '\n') ch = ';';
        return b;
    });
}

} // namespace klm
