#pragma once

// Command-line front end. Needs CLI11.hpp on the include path.

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sampling.hpp"
#include "stabkit.hpp"

namespace stabkit::cli {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum Exit { Ok = 0, VerificationFailed = 1, Usage = 2, Precondition = 3 };

// ---------------------------------------------------------------- flag parsing

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::int64_t parse_int(const std::string& s) {
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("not an integer: '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("not an integer: '" + s + "'");
    return v;
}

inline std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    if (s.empty()) return out;
    for (auto& t : split(s, ',')) out.push_back(static_cast<int>(parse_int(t)));
    return out;
}

inline std::vector<std::int64_t> parse_int64_list(const std::string& s) {
    std::vector<std::int64_t> out;
    if (s.empty()) return out;
    for (auto& t : split(s, ',')) out.push_back(parse_int(t));
    return out;
}

inline Rational parse_rational(const std::string& s) {
    auto parts = split(s, '/');
    if (parts.size() == 1) return Rational(parse_int(parts[0]));
    if (parts.size() != 2) throw UsageError("not a rational: '" + s + "'");
    std::int64_t d = parse_int(parts[1]);
    if (d == 0) throw UsageError("zero denominator in '" + s + "'");
    return Rational(parse_int(parts[0]), d);
}

// "2+1,1+1"
inline SignedGroupDatum parse_sig(const std::string& s) {
    std::vector<std::pair<int, int>> sig;
    for (auto& t : split(s, ',')) {
        auto pq = split(t, '+');
        if (pq.size() != 2) throw UsageError("signature entries look like p+q, got '" + t + "'");
        sig.emplace_back(static_cast<int>(parse_int(pq[0])), static_cast<int>(parse_int(pq[1])));
    }
    return SignedGroupDatum(sig);
}

// "1-2,2-0"
inline EndoTriple parse_endo(const std::string& s) {
    std::vector<int> p, m;
    for (auto& t : split(s, ',')) {
        auto pm = split(t, '-');
        if (pm.size() != 2) throw UsageError("endoscopy entries look like n+-n-, e.g. 1-2, got '" + t + "'");
        p.push_back(static_cast<int>(parse_int(pm[0])));
        m.push_back(static_cast<int>(parse_int(pm[1])));
    }
    return EndoTriple(p, m);
}

// "a;x1,x2,...;y1,..."
inline Weight parse_weight(const std::string& s) {
    auto parts = split(s, ';');
    if (parts.size() < 2) throw UsageError("weights look like a;x1,x2,... got '" + s + "'");
    Weight w{parse_int(parts[0]), {}};
    for (std::size_t i = 1; i < parts.size(); ++i) w.blocks.push_back(parse_int64_list(parts[i]));
    return w;
}

inline PlaceContext parse_place(const std::string& place, int d, int a) {
    if (place != "split" && place != "inert") throw UsageError("--place must be split or inert");
    return PlaceContext::make(place == "split", d, a > 0 ? std::optional<int>(a) : std::nullopt);
}

// ---------------------------------------------------------------- JSON helpers

inline ojson weight_json(const Weight& w) {
    ojson b = ojson::array();
    for (auto& blk : w.blocks) b.push_back(blk);
    return ojson{{"a", w.a}, {"blocks", b}};
}

inline ojson weight_sum_json(const SignedWeightSum& s) {
    ojson arr = ojson::array();
    for (auto& [w, c] : s.terms()) arr.push_back(ojson{{"coeff", c.str()}, {"weight", w.flat()}});
    return arr;
}

inline ojson substitution_json(const Substitution& sub) {
    ojson m = ojson::object();
    for (auto& [v, img] : sub) m[v.name()] = poly_to_json(img.poly());
    return m;
}

inline ojson perm_json(const Perm& p) {
    ojson a = ojson::array();
    for (int x : p) a.push_back(x + 1);
    return a;
}

inline ojson kostant_json(const std::vector<KostantEntry>& entries) {
    ojson arr = ojson::array();
    for (auto& e : entries)
        arr.push_back(ojson{{"omega", perm_json(e.omega)}, {"degree", e.degree}, {"weight", e.weight.flat()}});
    return arr;
}

struct Suite {
    std::string name;
    int cases = 0;
    ojson failures = ojson::array();

    void fail(ojson inputs, ojson expected, ojson got, ojson diff = nullptr) {
        failures.push_back(ojson{{"inputs", std::move(inputs)},
                                 {"expected", std::move(expected)},
                                 {"got", std::move(got)},
                                 {"difference", std::move(diff)}});
    }
    int emit(std::ostream& out, bool json) const {
        if (json) {
            out << ojson{{"suite", name}, {"cases", cases}, {"failures", failures}}.dump() << "\n";
        } else {
            out << "suite " << name << ": " << cases << " cases, " << failures.size() << " failures\n";
            for (auto& f : failures) out << "  FAIL " << f.dump() << "\n";
        }
        return failures.empty() ? Exit::Ok : Exit::VerificationFailed;
    }
};

inline ojson rational_vec_json(const std::vector<Rational>& v) {
    ojson a = ojson::array();
    for (auto& x : v) a.push_back(x.str());
    return a;
}

// ---------------------------------------------------------------- suites

inline Suite partition_lemma_suite(int n_max, std::optional<std::uint64_t> seed, int per_n = 200, int rot_n_max = 7) {
    Suite s{"partition-lemmas"};
    for (int n = 1; n <= n_max; ++n) {
        std::vector<int> idx(static_cast<std::size_t>(n), 0);
        const int vals[4] = {-2, -1, 1, 2};
        for (;;) {
            std::vector<Rational> lam;
            bool all_pos = true;
            for (int k : idx) {
                lam.emplace_back(vals[k]);
                all_pos = all_pos && vals[k] > 0;
            }
            ++s.cases;
            Rational a = partial_sum_signature(lam);
            std::int64_t b = ordered_partition_sum(lam);
            std::int64_t expect = all_pos ? (n % 2 ? -1 : 1) : 0;
            if (!(a == Rational(expect)) || b != expect)
                s.fail(ojson{{"lemma", "partial-sum"}, {"lambda", rational_vec_json(lam)}}, expect,
                       ojson{{"partial_sum_signature", a.str()}, {"ordered_partition_sum", b}});
            int k = 0;
            while (k < n && idx[static_cast<std::size_t>(k)] == 3) idx[static_cast<std::size_t>(k++)] = 0;
            if (k == n) break;
            ++idx[static_cast<std::size_t>(k)];
        }
    }
    if (seed) {
        std::mt19937_64 rng(*seed);
        for (int n = 1; n <= rot_n_max; ++n)
            for (int t = 0; t < per_n; ++t) {
                auto lam = random_rotation_vector(rng, n);
                ++s.cases;
                std::int64_t cnt = positive_rotation_count(lam);
                auto ks = positive_rotations(lam);
                if (cnt != factorial(n - 1) || ks.size() != 1)
                    s.fail(ojson{{"lemma", "rotation"}, {"lambda", rational_vec_json(lam)}},
                           ojson{{"count", factorial(n - 1)}, {"rotations", 1}},
                           ojson{{"count", cnt}, {"rotations", ks.size()}});
            }
    }
    return s;
}

inline Suite phi_identity_suite(int p, int q, std::optional<int> s_only, std::uint64_t seed, int count) {
    Suite suite{"phi-identity"};
    std::mt19937_64 rng(seed);
    int smax = std::min(p, q);
    if (smax < 1) throw PreconditionError("phi-identity needs min(p,q) >= 1");
    for (int s = 1; s <= smax; ++s) {
        if (s_only && *s_only != s) continue;
        for (int t = 0; t < count;) {
            Weight l = random_regular_lambda2(rng, p + q);
            PhiReport r;
            try {
                r = verify_phi_identity(p, q, s, l);
            } catch (const PreconditionError&) {
                continue;  // wall collision: resample
            }
            ++t;
            ++suite.cases;
            if (!r.ok())
                suite.fail(ojson{{"p", p}, {"q", q}, {"s", s}, {"lambda2", l.flat()}}, weight_sum_json(r.rhs),
                           weight_sum_json(r.lhs));
        }
    }
    return suite;
}

inline std::vector<EndoTriple> all_triples(const GroupDatum& g) {
    std::vector<EndoTriple> out;
    if (g.r() != 1) throw UnsupportedError("transfer-square sweeps are implemented for a single factor");
    int n = g.ni(1);
    for (int m = 0; m <= n; m += 2) out.emplace_back(std::vector<int>{n - m}, std::vector<int>{m});
    return out;
}

inline Suite transfer_square_suite(const GroupDatum& g, std::optional<EndoTriple> endo, std::optional<int> levi_s,
                                   std::optional<std::vector<int>> A, const PlaceContext& ctx, const std::string& gens) {
    Suite suite{"transfer-square"};
    if (g.r() != 1) throw UnsupportedError("transfer-square is implemented for a single factor");
    std::vector<LabeledPoly> generators;
    if (gens == "kottwitz" || gens == "all") generators = default_square_generators(g, ctx);
    if (gens == "orbit" || gens == "all")
        for (auto& x : orbit_sum_generators(g, ctx)) generators.push_back(x);
    if (generators.empty()) throw UsageError("--generators must be kottwitz, orbit or all");
    std::vector<EndoTriple> hs = endo ? std::vector<EndoTriple>{*endo} : all_triples(g);
    int n = g.ni(1);
    for (auto& h : hs) {
        h.validate_for(g);
        for (int s = 0; 2 * s <= n; ++s) {
            if (levi_s && *levi_s != s) continue;
            std::vector<std::vector<int>> As;
            if (A) {
                As.push_back(*A);
            } else {
                for (int k = 0; k <= s; ++k)
                    for (auto& sub : k_subsets(1, s, k)) As.push_back(sub);
            }
            for (auto& a : As) {
                if (!A) {
                    try {
                        LeviSignData::make(g, h, LeviDatum{s}, a);
                    } catch (const PreconditionError&) {
                        continue;  // sign set incompatible with h
                    }
                }
                auto rep = verify_transfer_square(g, h, LeviDatum{s}, a, ctx, generators);
                suite.cases += rep.cases;
                for (auto& f : rep.failures)
                    suite.fail(ojson{{"n", g.n}, {"endo", h.str()}, {"levi_s", s}, {"A", a}, {"generator", f.generator},
                                     {"f", poly_to_json(f.f)}, {"reason", f.reason}},
                               poly_to_json(f.rhs), poly_to_json(f.lhs), poly_to_json(f.lhs - f.rhs));
            }
        }
    }
    return suite;
}

// ---------------------------------------------------------------- entry point

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"stabkit: Satake, endoscopy and Kostant combinatorics for unitary similitude groups"};
    app.require_subcommand(1);

    std::string n_s, sig_s, place = "split", endo_s, A_s, sprime_s, weight_s, dir = "gt", omega_s, field = "E", poly_s,
                                 eval_s, gens = "kottwitz";
    int d = 1, a = 0, s_flag = -1, levi_s = -1, alpha = -1, m = 1, C = 1, n_max = 5, p_flag = 0, count = 50, n_flag = 0;
    std::uint64_t seed = 0;
    bool json = false;

    auto add_place = [&](CLI::App* c) {
        c->add_option("--place", place, "split or inert")->capture_default_str();
        c->add_option("--d", d, "[L:Q_p]")->capture_default_str();
        c->add_option("--a", a, "[L:E_p], checked against --place and --d");
    };
    auto add_json = [&](CLI::App* c) { c->add_flag("--json", json, "JSON output (data commands always print JSON)"); };

    auto* endoscopy = app.add_subcommand("endoscopy", "elliptic endoscopic classes of G(U*(n_1) x ...)");
    endoscopy->add_option("--n", n_s, "block sizes, e.g. 3,2")->required();
    add_json(endoscopy);

    auto* invariants = app.add_subcommand("invariants", "tau, k, d for a signature; optional iota_GH");
    invariants->add_option("--sig", sig_s, "signature, e.g. 2+1,1+1")->required();
    invariants->add_option("--endo", endo_s, "endoscopic triple, e.g. 1-2");
    add_json(invariants);

    auto* sk = app.add_subcommand("satake-kottwitz", "Satake transform of the Kottwitz function");
    sk->add_option("--n", n_s)->required();
    sk->add_option("--s", sig_s, "subset sizes s_i, e.g. 1 or 1,0")->required();
    add_place(sk);
    add_json(sk);

    auto* bc = app.add_subcommand("base-change", "base change substitution");
    bc->add_option("--n", n_s)->required();
    bc->add_option("--poly", poly_s, "polynomial (canonical JSON) to map");
    add_place(bc);
    add_json(bc);

    auto* tr = app.add_subcommand("transfer", "endoscopic transfer substitution");
    tr->add_option("--n", n_s)->required();
    tr->add_option("--endo", endo_s)->required();
    tr->add_option("--poly", poly_s);
    add_place(tr);
    add_json(tr);

    auto* ttr = app.add_subcommand("twisted-transfer", "twisted transfer substitution");
    ttr->add_option("--n", n_s)->required();
    ttr->add_option("--endo", endo_s)->required();
    ttr->add_option("--poly", poly_s);
    add_place(ttr);
    add_json(ttr);

    auto* ct = app.add_subcommand("constant-term", "Kottwitz function and its Levi counterpart");
    ct->add_option("--n", n_s)->required();
    ct->add_option("--levi-s", levi_s)->required();
    ct->add_option("--alpha", alpha)->required();
    add_place(ct);
    add_json(ct);

    auto* verify = app.add_subcommand("verify", "verification suites");
    verify->require_subcommand(1);
    auto* vts = verify->add_subcommand("transfer-square", "constant term / twisted transfer compatibility");
    vts->add_option("--n", n_s)->required();
    vts->add_option("--endo", endo_s, "default: every parity-valid triple");
    vts->add_option("--levi-s", levi_s, "default: every s with 2s <= n");
    vts->add_option("--A", A_s, "default: every compatible sign set");
    vts->add_option("--generators", gens, "kottwitz, orbit or all")->capture_default_str();
    add_place(vts);
    add_json(vts);
    auto* vphi = verify->add_subcommand("phi-identity", "Kostant truncation identity on seeded regular weights");
    vphi->add_option("--sig", sig_s)->required();
    vphi->add_option("--s", s_flag, "default: every 1 <= s <= min(p,q)");
    vphi->add_option("--seed", seed)->required();
    vphi->add_option("--count", count)->capture_default_str();
    add_json(vphi);
    auto* vpl = verify->add_subcommand("partition-lemmas", "signed partition identities");
    vpl->add_option("--n-max", n_max)->capture_default_str();
    auto* seed_opt = vpl->add_option("--seed", seed, "also run the seeded rotation-count check");
    add_json(vpl);

    auto* kos = app.add_subcommand("kostant", "Kostant cohomology of N_{S'} with coefficients in V_mu");
    auto* trunc = app.add_subcommand("truncate", "truncated Kostant cohomology");
    for (auto* c : {kos, trunc}) {
        c->add_option("--sig", sig_s)->required();
        c->add_option("--sprime", sprime_s, "S', e.g. 1,2")->required();
        c->add_option("--weight", weight_s, "dominant highest weight a;x1,...,xn")->required();
        add_json(c);
    }
    trunc->add_option("--dir", dir, "gt or lt")->capture_default_str();

    auto* wc = app.add_subcommand("weyl-char", "Weyl character of a dominant GL_n weight");
    wc->add_option("--weight", weight_s, "x1,...,xn")->required();
    add_json(wc);

    auto* wt = app.add_subcommand("weight-transfer", "endoscopic transfer of a dominant weight");
    wt->add_option("--weight", weight_s, "a;x_1,...;...")->required();
    wt->add_option("--endo", endo_s)->required();
    wt->add_option("--omega", omega_s, "I_i per factor separated by '/', e.g. 1/2,3; default: all of Omega_*");
    wt->add_option("--C", C)->capture_default_str();
    add_json(wt);

    auto* ft = app.add_subcommand("frobenius-trace", "Frobenius trace polynomial");
    ft->add_option("--sig", sig_s)->required();
    ft->add_option("--m", m)->capture_default_str();
    ft->add_option("--place", place)->capture_default_str();
    ft->add_option("--field", field, "Q or E")->capture_default_str();
    ft->add_option("--eval", eval_s, "exact values, e.g. X=2,X_1_1=1/3");
    add_json(ft);

    auto* sb = app.add_subcommand("subsets", "subsets with nonsingular incidence system");
    sb->add_option("--n", n_flag)->required();
    sb->add_option("--p", p_flag)->required();
    add_json(sb);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Exit::Ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return Exit::Usage;
    }

    auto emit = [&](const ojson& j) {
        out << j.dump() << "\n";
        return Exit::Ok;
    };
    auto group = [&]() { return GroupDatum(parse_int_list(n_s)); };
    auto maybe_apply = [&](const RingMap& rm) {
        ojson j{{"map", substitution_json(rm.sub)}};
        if (!poly_s.empty()) {
            LaurentPoly f = parse_poly(poly_s);
            if (!rm.source.contains(f)) throw PreconditionError("--poly is not in the source Hecke ring");
            j["image"] = poly_to_json(rm.apply(f));
        }
        return j;
    };

    try {
        if (*endoscopy) {
            GroupDatum g = group();
            ojson arr = ojson::array();
            for (auto& c : enumerate_endoscopic(g))
                arr.push_back(ojson{{"endo", c.rep.str()},
                                    {"nplus", c.rep.nplus},
                                    {"nminus", c.rep.nminus},
                                    {"outer_order", c.outer_order},
                                    {"iota", iota(g, c.rep).str()}});
            return emit(ojson{{"classes", arr}});
        }
        if (*invariants) {
            SignedGroupDatum sg = parse_sig(sig_s);
            GroupDatum g = sg.datum();
            std::int64_t tau = tamagawa(g), k = k_invariant(sg), dd = 1;
            for (auto [p, q] : sg.sig) dd = detail::checked_mul(dd, packet_size(p, q));
            std::int64_t kt = k * tau;
            int e = 0;
            while ((std::int64_t{1} << e) < kt) ++e;
            std::string check = (std::int64_t{1} << e) == kt ? "2^" + std::to_string(e) : std::to_string(kt);
            ojson j{{"tau", tau}, {"k", k}, {"d", dd}, {"kt_check", check}};
            if (!endo_s.empty()) j["iota_GH"] = iota_GH(sg, parse_endo(endo_s)).str();
            return emit(j);
        }
        if (*sk) {
            return emit(poly_to_json(kottwitz_function(group(), parse_int_list(sig_s), parse_place(place, d, a))));
        }
        if (*bc) return emit(maybe_apply(base_change_map(group(), parse_place(place, d, a))));
        if (*tr) return emit(maybe_apply(transfer_map(group(), parse_endo(endo_s), parse_place(place, d, a))));
        if (*ttr) return emit(maybe_apply(twisted_transfer_map(group(), parse_endo(endo_s), parse_place(place, d, a))));
        if (*ct) {
            GroupDatum g = group();
            PlaceContext ctx = parse_place(place, d, a);
            LaurentPoly f = kottwitz_function(g, {alpha}, ctx);
            LaurentPoly fM = levi_constant_term(f, g, LeviDatum{levi_s}, ctx);
            return emit(ojson{{"f", poly_to_json(fM)},
                              {"phi_M", poly_to_json(levi_kottwitz_function(g, LeviDatum{levi_s}, alpha, ctx.d()))}});
        }
        if (*vts) {
            std::optional<EndoTriple> h;
            if (!endo_s.empty()) h = parse_endo(endo_s);
            std::optional<int> ls;
            if (levi_s >= 0) ls = levi_s;
            std::optional<std::vector<int>> AA;
            if (vts->count("--A")) AA = parse_int_list(A_s);
            return transfer_square_suite(group(), h, ls, AA, parse_place(place, d, a), gens).emit(out, json);
        }
        if (*vphi) {
            SignedGroupDatum sg = parse_sig(sig_s);
            if (sg.sig.size() != 1) throw UsageError("phi-identity takes a single p+q");
            std::optional<int> so;
            if (s_flag >= 0) so = s_flag;
            if (count < 1) throw UsageError("--count must be positive");
            return phi_identity_suite(sg.sig[0].first, sg.sig[0].second, so, seed, count).emit(out, json);
        }
        if (*vpl) {
            if (n_max < 1 || n_max > 8) throw UsageError("--n-max must be in 1..8");
            std::optional<std::uint64_t> sd;
            if (seed_opt->count()) sd = seed;
            return partition_lemma_suite(n_max, sd).emit(out, json);
        }
        if (*kos || *trunc) {
            SignedGroupDatum sg = parse_sig(sig_s);
            if (sg.sig.size() != 1) throw UsageError("kostant takes a single p+q");
            KostantDatum kd = KostantDatum::make(sg.sig[0].first, sg.sig[0].second, parse_int_list(sprime_s));
            Weight l2 = lambda_from_highest_weight(parse_weight(weight_s));
            auto entries = kostant_cohomology(kd, l2);
            if (*trunc) {
                if (dir != "gt" && dir != "lt") throw UsageError("--dir must be gt or lt");
                entries = truncate_cohomology(entries, kd, dir == "gt" ? TruncDir::Greater : TruncDir::Less);
            }
            return emit(ojson{{"lambda2", l2.flat()}, {"entries", kostant_json(entries)}});
        }
        if (*wc) {
            auto w = parse_int64_list(weight_s);
            std::vector<VarId> vars;
            for (std::size_t j = 1; j <= w.size(); ++j) vars.push_back(VarId::tor(1, static_cast<int>(j)));
            for (std::size_t j = 1; j < w.size(); ++j)
                if (w[j - 1] < w[j]) throw PreconditionError("weyl-char: weight must be dominant");
            return emit(poly_to_json(weyl_character(w, vars)));
        }
        if (*wt) {
            Weight w = parse_weight(weight_s);
            EndoTriple h = parse_endo(endo_s);
            std::vector<std::vector<std::vector<int>>> omegas;
            if (omega_s.empty() && !wt->count("--omega")) {
                omegas = omega_star(h);
            } else {
                std::vector<std::vector<int>> I;
                for (auto& part : split(omega_s, '/')) I.push_back(parse_int_list(part));
                omegas.push_back(I);
            }
            ojson arr = ojson::array();
            for (auto& I : omegas) {
                Weight o = endoscopic_weight_transfer(w, h, I, C);
                arr.push_back(ojson{{"omega", I}, {"weight", weight_json(o)}, {"S", w.block_sum()}, {"S_H", o.block_sum()}});
            }
            return emit(ojson{{"transfers", arr}});
        }
        if (*ft) {
            if (place != "split" && place != "inert") throw UsageError("--place must be split or inert");
            if (field != "Q" && field != "E") throw UsageError("--field must be Q or E");
            LaurentPoly f = frobenius_trace(parse_sig(sig_s), m, place == "split", field == "Q" ? TraceField::Q : TraceField::E);
            ojson j{{"trace", poly_to_json(f)}};
            if (!eval_s.empty()) {
                std::map<VarId, Rational> vals;
                for (auto& kv : split(eval_s, ',')) {
                    auto p = split(kv, '=');
                    if (p.size() != 2) throw UsageError("--eval entries look like NAME=value");
                    auto v = VarId::parse(p[0]);
                    if (!v) throw UsageError("unknown variable " + p[0]);
                    vals[*v] = parse_rational(p[1]);
                }
                j["value"] = evaluate(f, vals).str();
            }
            return emit(j);
        }
        if (*sb) {
            auto sys = nonsingular_subsets(n_flag, p_flag);
            return emit(ojson{{"J", sys.J}, {"det", sys.det.str()}});
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return Exit::Usage;
    } catch (const std::logic_error& e) {
        // PreconditionError, ContextError and friends derive from invalid_argument
        err << "precondition violated: " << e.what() << "\n";
        return Exit::Precondition;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return Exit::Precondition;
    }
    err << "usage error: no subcommand\n";
    return Exit::Usage;
}

}  // namespace stabkit::cli
