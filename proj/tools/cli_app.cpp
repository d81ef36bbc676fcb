#include "cli_app.hpp"

#include "json_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace qca::cli {

namespace {

// Bad user input; maps to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Named scalars. Identifiers without a --param binding get a generic value
// drawn from the seed, and the drawn values are echoed in the output.
struct Symbols {
    std::map<std::string, QRational> values;
    std::vector<std::string> drawn;
    ExactSampler sampler{1};
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

QRational scalar(const std::string& text, Symbols& sym) {
    auto t = trim(text);
    if (t.empty()) throw InputError("empty scalar");
    for (size_t k = 0; k < t.size();) {
        if (!std::isalpha(static_cast<unsigned char>(t[k])) && t[k] != '_') {
            ++k;
            continue;
        }
        size_t e = k;
        while (e < t.size() && (std::isalnum(static_cast<unsigned char>(t[e])) || t[e] == '_')) ++e;
        auto name = t.substr(k, e - k);
        if (name != "q" && !sym.values.count(name)) {
            sym.values[name] = sym.sampler.nonzero();
            sym.drawn.push_back(name);
        }
        k = e;
    }
    return QRational::parse(t, sym.values);
}

std::vector<QRational> scalar_list(const std::string& text, Symbols& sym) {
    std::vector<QRational> out;
    if (trim(text).empty()) return out;
    for (const auto& part : split(text, ',')) out.push_back(scalar(part, sym));
    return out;
}

// "beta=...;roots=a,b,..."; either key may be omitted
NodePolynomial parse_phi(const std::string& text, Symbols& sym) {
    NodePolynomial p;
    bool seen_beta = false, seen_roots = false;
    for (const auto& field : split(text, ';')) {
        if (trim(field).empty()) continue;
        auto eq = field.find('=');
        if (eq == std::string::npos) throw InputError("phi field without '=': " + field);
        auto key = trim(field.substr(0, eq));
        auto val = field.substr(eq + 1);
        if (key == "beta" && !seen_beta) {
            p.beta = scalar(val, sym);
            seen_beta = true;
        } else if (key == "roots" && !seen_roots) {
            p.roots = scalar_list(val, sym);
            seen_roots = true;
        } else {
            throw InputError("unexpected phi field: " + key);
        }
    }
    if (p.beta.is_zero()) throw InputError("phi must have nonzero leading coefficient");
    return p;
}

Symbols parse_params(const std::vector<std::string>& defs, std::uint64_t seed) {
    Symbols sym;
    sym.sampler = ExactSampler(seed);
    for (const auto& d : defs) {
        auto eq = d.find('=');
        if (eq == std::string::npos) throw InputError("--param expects name=value: " + d);
        auto name = trim(d.substr(0, eq));
        bool ident = !name.empty() && std::isalpha(static_cast<unsigned char>(name[0]));
        for (char c : name) ident = ident && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ident || name == "q") throw InputError("bad parameter name: " + name);
        sym.values[name] = scalar(d.substr(eq + 1), sym);
    }
    return sym;
}

Partition parse_partition(const std::string& text) {
    std::vector<int> parts;
    if (trim(text).empty()) return Partition(parts);
    for (const auto& p : split(text, ',')) {
        auto t = trim(p);
        size_t used = 0;
        int v = std::stoi(t, &used);
        if (used != t.size() || v <= 0) throw InputError("bad partition part: " + p);
        parts.push_back(v);
    }
    for (size_t k = 1; k < parts.size(); ++k)
        if (parts[k] > parts[k - 1]) throw InputError("partition parts must be nonincreasing");
    return Partition(parts);
}

std::vector<int> int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& p : split(text, ',')) {
        auto t = trim(p);
        size_t used = 0;
        int v = std::stoi(t, &used);
        if (used != t.size()) throw InputError("bad integer: " + p);
        out.push_back(v);
    }
    return out;
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw InputError(msg);
}

constexpr int kMaxT = 64;

Module build_module(const json& spec, Symbols& sym, int T);

std::vector<QRational> json_scalars(const json& j, Symbols& sym) {
    require(j.is_array(), "expected an array of scalars");
    std::vector<QRational> out;
    for (const auto& x : j) {
        if (x.is_number_integer()) out.push_back(QRational(x.get<long>()));
        else out.push_back(scalar(x.get<std::string>(), sym));
    }
    return out;
}

QRational json_scalar(const json& j, Symbols& sym) {
    if (j.is_number_integer()) return QRational(j.get<long>());
    return scalar(j.get<std::string>(), sym);
}

Module build_module(const json& spec, Symbols& sym, int T) {
    require(spec.is_object(), "construction spec must be an object");
    auto type = spec.at("type").get<std::string>();
    if (type == "onedim") return one_dim_module(json_scalars(spec.at("Q"), sym), json_scalars(spec.at("beta"), sym), T);
    if (type == "sl2eval") return sl2_eval_module(json_scalar(spec.at("gamma"), sym), T);
    if (type == "gln" || type == "loop") {
        int n = spec.at("n").get<int>(), i = spec.at("i").get<int>();
        require(n >= 2 && n <= 6, "gln: n must lie in 2..6");
        return solve_loop_action(n, i, json_scalar(spec.at("gamma"), sym), T);
    }
    if (type == "tensor") {
        const auto& fs = spec.at("factors");
        require(fs.is_array() && !fs.empty(), "tensor: factors must be a nonempty array");
        std::vector<Module> ms;
        for (const auto& f : fs) ms.push_back(build_module(f, sym, T));
        return tensor_all(ms);
    }
    if (type == "pullback") {
        int sign = spec.at("sign").get<int>();
        require(sign == 1 || sign == -1, "pullback: sign must be 1 or -1");
        return pullback_iota(build_module(spec.at("module"), sym, T), sign, json_scalars(spec.at("Q"), sym));
    }
    if (type == "cyclic" || type == "simpletop") {
        Module M = build_module(spec.at("module"), sym, T);
        int k = spec.value("vector", 0);
        require(k >= 0 && k < M.dim(), "vector index out of range");
        if (type == "cyclic") return cyclic_submodule(M, M.basis_vector(k)).module;
        return simple_top(M, M.basis_vector(k)).module;
    }
    throw InputError("unknown module type: " + type);
}

json module_json(const Module& M) {
    json j;
    j["n"] = M.n();
    j["Q"] = to_json(M.Q());
    j["dim"] = M.dim();
    j["weights"] = M.weights;
    if (!M.labels.empty()) j["labels"] = M.labels;
    try {
        j["hw"] = to_json(hw_of(M).hw);
    } catch (const std::invalid_argument& e) {
        j["hw"] = nullptr;
        j["hwError"] = e.what();
    }
    return j;
}

void merge(CheckReport& into, const CheckReport& from) {
    for (const auto& [k, c] : from.families) {
        into.families[k].instances += c.instances;
        into.families[k].failures += c.failures;
    }
    for (const auto& f : from.failures)
        if (into.failures.size() < 20) into.failures.push_back(f);
}

struct Options {
    std::vector<std::string> params;
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 1;

    int n = 2;
    std::string Q;
    std::vector<std::string> phi;
    int T = 4;
    bool construct = false;

    int k = 5, tmax = 8, seeds = 50;
    int maxweight = 3, maxs = 3;

    std::string spec, spec_file;
    int relT = -1;
    int identities_k = 0;

    std::string nbar, lambda, Qhat;
};

struct Result {
    json body;
    bool ok = true;
};

Result cmd_identities(const Options& o) {
    require(o.k >= 1 && o.k <= 8, "--k must lie in 1..8");
    require(o.tmax >= 0 && o.tmax <= 12, "--tmax must lie in 0..12");
    require(o.seeds >= 1 && o.seeds <= 1000, "--seeds must lie in 1..1000");
    std::vector<std::uint64_t> seeds;
    for (int s = 0; s < o.seeds; ++s) seeds.push_back(o.seed + static_cast<std::uint64_t>(s));
    auto checks = identity_suite(o.k, o.tmax, seeds);
    Result r;
    json failing = json::array();
    std::map<std::string, std::pair<int, int>> per;
    for (const auto& c : checks) {
        auto& [total, bad] = per[c.identity];
        ++total;
        if (!c.pass) {
            ++bad;
            failing.push_back({{"identity", c.identity}, {"params", c.params}});
        }
    }
    json fam = json::object();
    for (const auto& [name, tb] : per) fam[name] = {{"instances", tb.first}, {"failures", tb.second}};
    r.ok = failing.empty();
    r.body = {{"k", o.k}, {"tmax", o.tmax}, {"seed", o.seed}, {"seeds", o.seeds},
              {"checks", checks.size()}, {"identities", fam}, {"failures", failing}, {"ok", r.ok}};
    return r;
}

std::pair<std::vector<QRational>, std::vector<NodePolynomial>> node_data(const Options& o, Symbols& sym) {
    require(o.n >= 2 && o.n <= 8, "--n must lie in 2..8");
    auto Q = scalar_list(o.Q, sym);
    require(static_cast<int>(Q.size()) == o.n - 1, "--Q needs n-1 entries");
    require(static_cast<int>(o.phi.size()) == o.n - 1, "--phi must be given once per node");
    std::vector<NodePolynomial> phi;
    for (const auto& p : o.phi) phi.push_back(parse_phi(p, sym));
    return {Q, phi};
}

Result cmd_classify(const Options& o, Symbols& sym) {
    auto [Q, phi] = node_data(o, sym);
    Result r;
    json nodes = json::array();
    HighestWeight hw;
    std::vector<NodePolynomial> canon;
    for (size_t k = 0; k < Q.size(); ++k) {
        auto c = canonicalize(Q[k], phi[k]);
        hw.nodes.push_back(hw_from_poly(Q[k], phi[k], o.T));
        canon.push_back(c);
        nodes.push_back({{"node", k + 1},
                         {"Q", to_json(Q[k])},
                         {"phi", to_json(phi[k])},
                         {"canonical", to_json(c)},
                         {"strip_count", strip_count(Q[k], phi[k])},
                         {"hw", to_json(hw.nodes.back())}});
    }
    r.body = {{"n", o.n}, {"T", o.T}, {"nodes", nodes}, {"hw", to_json(hw)}};
    if (o.construct) {
        auto rt = classify_roundtrip(Q, canon, o.T);
        json exp = json::array(), obs = json::array();
        for (const auto& h : rt.expected) exp.push_back(to_json(h));
        for (const auto& h : rt.observed) obs.push_back(to_json(h));
        r.body["roundtrip"] = {{"ok", rt.ok},         {"expected", exp},           {"observed", obs},
                               {"tensor_dim", rt.tensor_dim}, {"cyclic_dim", rt.cyclic_dim}, {"top_dim", rt.top_dim},
                               {"detail", rt.detail}};
        r.ok = rt.ok;
    }
    r.body["ok"] = r.ok;
    return r;
}

std::pair<QRational, NodePolynomial> single_node(const Options& o, Symbols& sym) {
    auto Q = scalar_list(o.Q, sym);
    require(Q.size() == 1, "--Q needs exactly one entry");
    require(o.phi.size() == 1, "--phi must be given exactly once");
    return {Q[0], parse_phi(o.phi[0], sym)};
}

Result cmd_canonicalize(const Options& o, Symbols& sym) {
    auto [Q, phi] = single_node(o, sym);
    auto c = canonicalize(Q, phi);
    bool idem = canonicalize(Q, c) == c;
    bool in = in_CxQ(Q, c);
    Result r;
    r.ok = idem && in;
    r.body = {{"Q", to_json(Q)},
              {"phi", to_json(phi)},
              {"canonical", to_json(c)},
              {"strip_count", strip_count(Q, phi)},
              {"idempotent", idem},
              {"in_CxQ", in},
              {"ok", r.ok}};
    return r;
}

Result cmd_psi(const Options& o, Symbols& sym) {
    auto [Q, phi] = single_node(o, sym);
    Result r;
    r.body = {{"Q", to_json(Q)}, {"phi", to_json(phi)}, {"T", o.T}, {"series", to_json(psi_series(Q, phi, o.T))},
              {"ok", true}};
    return r;
}

json read_spec(const Options& o) {
    require(o.spec.empty() != o.spec_file.empty(), "give exactly one of --spec and --spec-file");
    if (!o.spec.empty()) return json::parse(o.spec);
    std::ifstream in(o.spec_file);
    require(static_cast<bool>(in), "cannot read " + o.spec_file);
    return json::parse(in);
}

Result cmd_build(const Options& o, Symbols& sym, bool verify) {
    require(o.T >= 1, "--T must be at least 1 for module construction");
    auto spec = read_spec(o);
    Module M = build_module(spec, sym, o.T);
    Result r;
    r.body = module_json(M);
    if (!verify) {
        r.body["ok"] = true;
        return r;
    }
    int relT = o.relT < 0 ? o.T : o.relT;
    require(relT <= M.T(), "--relT exceeds the module truncation");
    CheckReport rep = verify_relations(M, relT);
    merge(rep, verify_structure(M));
    if (o.identities_k > 0) {
        require(M.n() == 2, "--identities-k needs a rank one module");
        merge(rep, verify_rank_one_identities(M, o.identities_k));
    }
    r.ok = rep.ok();
    r.body["relationChecks"] = to_json(rep);
    r.body["failures"] = rep.failures;
    r.body["ok"] = r.ok;
    return r;
}

Result cmd_pbw(const Options& o) {
    require(o.n >= 2 && o.n <= 5, "--n must lie in 2..5");
    require(o.maxweight >= 0 && o.maxweight <= 6, "--maxweight must lie in 0..6");
    require(o.maxs >= 0 && o.maxs <= 6, "--maxs must lie in 0..6");
    require(o.T >= o.maxs, "--T must be at least --maxs");
    auto rep = pbw_verify(o.n, o.maxweight, o.maxs, o.T);
    Result r;
    json slices = json::array(), bad = json::array();
    for (const auto& s : rep.slices) {
        slices.push_back(to_json(s));
        if (!s.match) bad.push_back(to_json(s));
    }
    r.ok = rep.ok();
    r.body = {{"n", o.n},         {"maxweight", o.maxweight},  {"maxs", o.maxs},   {"T", o.T},
              {"slices", slices}, {"mismatches", rep.mismatches}, {"failures", bad}, {"ok", r.ok}};
    return r;
}

Result cmd_weyl(const Options& o, Symbols& sym) {
    auto nbar = int_list(o.nbar);
    for (int x : nbar) require(x >= 1, "--nbar entries must be positive");
    Multipartition lam;
    for (const auto& p : split(o.lambda, '|')) lam.push_back(parse_partition(p));
    require(lam.size() == nbar.size(), "--lambda needs one partition per --nbar entry");
    auto Qhat = scalar_list(o.Qhat, sym);
    require(Qhat.size() == nbar.size(), "--Qhat needs one entry per --nbar entry");
    auto nodes = weyl_hw(nbar, lam, Qhat, o.T);
    json arr = json::array();
    HighestWeight hw;
    for (const auto& w : nodes) {
        arr.push_back({{"node", w.node}, {"phi", to_json(w.phi)}, {"Q", to_json(w.Q)}, {"hw", to_json(w.hw)}});
        hw.nodes.push_back(w.hw);
    }
    json lj = json::array();
    for (const auto& p : lam) lj.push_back(to_json(p));
    Result r;
    r.body = {{"nbar", nbar}, {"lambda", lj}, {"Qhat", to_json(Qhat)}, {"T", o.T},
              {"nodes", arr}, {"hw", to_json(hw)}, {"ok", true}};
    return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact computations for the (q,Q)-current algebra of sl_n", "qca"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--param", o.params, "bind a symbol used in scalars, name=value");
    app.add_option("--out", o.out, "write JSON here instead of standard output");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json"}));
    app.add_option("--seed", o.seed, "base seed for random cases");

    auto* ident = app.add_subcommand("identities", "symmetric polynomial identity suite");
    ident->add_option("--k", o.k, "number of variables");
    ident->add_option("--tmax", o.tmax, "largest degree t");
    ident->add_option("--seeds", o.seeds, "number of random parameter draws");

    auto* classify = app.add_subcommand("classify", "highest weight from Drinfeld-type polynomials");
    classify->add_option("--n", o.n, "n of sl_n")->required();
    classify->add_option("--Q", o.Q, "comma list of Q_i")->required();
    classify->add_option("--phi", o.phi, "beta=..;roots=.., once per node")->required();
    classify->add_option("--T", o.T, "truncation");
    classify->add_flag("--construct", o.construct, "build the module and compare highest weights");

    auto* canon = app.add_subcommand("canonicalize", "strip factors of x - Q^-1 beta^-2");
    canon->add_option("--Q", o.Q, "Q")->required();
    canon->add_option("--phi", o.phi, "beta=..;roots=..")->required();

    auto* psi = app.add_subcommand("psi-series", "Psi^+ generating series of a highest weight");
    psi->add_option("--Q", o.Q, "Q")->required();
    psi->add_option("--phi", o.phi, "beta=..;roots=..")->required();
    psi->add_option("--T", o.T, "truncation");

    auto* build = app.add_subcommand("build", "construct a module from a JSON spec");
    auto* verify = app.add_subcommand("verify", "construct a module and check every relation");
    for (auto* sc : {build, verify}) {
        sc->add_option("--spec", o.spec, "JSON construction spec");
        sc->add_option("--spec-file", o.spec_file, "file holding the JSON construction spec");
        sc->add_option("--T", o.T, "module truncation");
    }
    verify->add_option("--relT", o.relT, "largest level in relation instances, default T");
    verify->add_option("--identities-k", o.identities_k, "also check the rank one identities up to this k");

    auto* pbw = app.add_subcommand("pbw", "graded dimensions against PBW counts");
    pbw->add_option("--n", o.n, "n of sl_n")->required();
    pbw->add_option("--maxweight", o.maxweight, "largest simple root multiplicity");
    pbw->add_option("--maxs", o.maxs, "largest level sum");
    pbw->add_option("--T", o.T, "largest letter level")->required();

    auto* weyl = app.add_subcommand("weyl-hw", "highest weights of Weyl modules");
    weyl->add_option("--nbar", o.nbar, "comma list n_1,...,n_r")->required();
    weyl->add_option("--lambda", o.lambda, "partitions separated by '|', parts by ','")->required();
    weyl->add_option("--Qhat", o.Qhat, "comma list Qhat_0,...,Qhat_{r-1}")->required();
    weyl->add_option("--T", o.T, "truncation");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::Success&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        require(o.T >= 0 && o.T <= kMaxT, "--T must lie in 0.." + std::to_string(kMaxT));
        Symbols sym = parse_params(o.params, o.seed);
        Result r;
        json head;
        if (ident->parsed()) {
            head = "identities";
            r = cmd_identities(o);
        } else if (classify->parsed()) {
            head = "classify";
            r = cmd_classify(o, sym);
        } else if (canon->parsed()) {
            head = "canonicalize";
            r = cmd_canonicalize(o, sym);
        } else if (psi->parsed()) {
            head = "psi-series";
            r = cmd_psi(o, sym);
        } else if (build->parsed() || verify->parsed()) {
            head = build->parsed() ? "build" : "verify";
            r = cmd_build(o, sym, verify->parsed());
        } else if (pbw->parsed()) {
            head = "pbw";
            r = cmd_pbw(o);
        } else {
            head = "weyl-hw";
            r = cmd_weyl(o, sym);
        }
        r.body["command"] = head;
        if (!sym.drawn.empty()) {
            json drawn = json::object();
            for (const auto& name : sym.drawn) drawn[name] = to_json(sym.values.at(name));
            r.body["drawn"] = drawn;
        }
        std::string text = r.body.dump(2) + "\n";
        if (o.out.empty()) {
            out << text;
        } else {
            std::ofstream f(o.out);
            require(static_cast<bool>(f), "cannot write " + o.out);
            f << text;
        }
        return r.ok ? 0 : 1;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        err << "json error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        // a construction or internal check failed
        out << json{{"ok", false}, {"error", e.what()}}.dump(2) << "\n";
        return 1;
    }
}

}  // namespace qca::cli
