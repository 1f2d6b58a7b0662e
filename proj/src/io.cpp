#include "k3moduli/io.hpp"

#include <map>
#include <sstream>

#include "k3moduli/errors.hpp"

namespace k3moduli::io {

namespace {

const Int kJsonSafeMax = (Int(1) << 53);

json envelope(const std::string& command, const json& input) {
    json r;
    r["schema"] = kReportSchema;
    r["tool"] = kToolVersion;
    r["command"] = command;
    r["input"] = input;
    return r;
}

void require_schema(const json& input, const std::string& command) {
    if (!input.is_object())
        throw bad_input_error("input document must be a JSON object");
    const std::string expected = "k3moduli/" + command + "/v1";
    if (!input.contains("schema") || !input["schema"].is_string() ||
        input["schema"].get<std::string>() != expected)
        throw bad_input_error("input document must carry \"schema\": \"" + expected + "\"");
}

const json& require_field(const json& j, const std::string& key) {
    if (!j.is_object() || !j.contains(key))
        throw bad_input_error("missing field \"" + key + "\"");
    return j[key];
}

}  // namespace

json int_to_json(const Int& x) {
    if (x <= kJsonSafeMax && x >= -kJsonSafeMax)
        return json(x.convert_to<long long>());
    return json(x.str());
}

Int int_from_json(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            throw bad_input_error(what + ": malformed integer string");
        }
    }
    if (j.is_number_float())
        throw bad_input_error(what + ": floating-point values are not accepted");
    throw bad_input_error(what + ": expected an integer");
}

json rat_to_json(const Rat& x) {
    return json(to_string(x));
}

Rat rat_from_json(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_number_unsigned()) return Rat(Int(j.get<unsigned long long>()));
    if (j.is_number_float())
        throw bad_input_error(what + ": floating-point values are not accepted; write \"p/q\"");
    if (!j.is_string()) throw bad_input_error(what + ": expected an integer or \"p/q\" string");
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw bad_input_error(what + ": zero denominator");
        return Rat(num, den);
    } catch (const bad_input_error&) {
        throw;
    } catch (const std::exception&) {
        throw bad_input_error(what + ": malformed rational string");
    }
}

json intvec_to_json(const IntVec& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(int_to_json(x));
    return a;
}

IntVec intvec_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) throw bad_input_error(what + ": expected an array");
    IntVec v;
    v.reserve(j.size());
    for (const json& x : j) v.push_back(int_from_json(x, what));
    return v;
}

json ratvec_to_json(const RatVec& v) {
    json a = json::array();
    for (const Rat& x : v) a.push_back(rat_to_json(x));
    return a;
}

RatVec ratvec_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) throw bad_input_error(what + ": expected an array");
    RatVec v;
    v.reserve(j.size());
    for (const json& x : j) v.push_back(rat_from_json(x, what));
    return v;
}

json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) rows.push_back(intvec_to_json(m.row_vec(i)));
    return rows;
}

IntMatrix matrix_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty())
        throw bad_input_error(what + ": expected a nonempty array of rows");
    std::vector<IntVec> rows;
    for (const json& r : j) rows.push_back(intvec_from_json(r, what));
    const size_t cols = rows[0].size();
    IntMatrix m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw bad_input_error(what + ": ragged rows");
        for (size_t c = 0; c < cols; ++c) m(i, c) = rows[i][c];
    }
    return m;
}

K3Surface parse_surface_spec(const json& spec) {
    if (!spec.is_object())
        throw bad_input_error("surface spec: expected an object");
    const bool rank_one = spec.contains("picard_rank_one");
    const bool general = spec.contains("ns_gram") || spec.contains("embedding");
    if (rank_one && general)
        throw bad_input_error("surface spec: give either picard_rank_one or ns_gram+embedding");
    if (rank_one) {
        Int degree = int_from_json(spec["picard_rank_one"], "picard_rank_one");
        if (degree <= 0 || degree % 2 != 0)
            throw bad_input_error("surface spec: picard_rank_one degree must be positive and even");
        return K3Surface::with_rank_one_ns(degree);
    }
    if (!spec.contains("ns_gram") || !spec.contains("embedding"))
        throw bad_input_error("surface spec: ns_gram and embedding must be given together");
    IntMatrix gram = matrix_from_json(spec["ns_gram"], "ns_gram");
    IntMatrix emb = matrix_from_json(spec["embedding"], "embedding");
    if (gram.rows() != gram.cols() || !gram.is_symmetric())
        throw bad_input_error("surface spec: ns_gram must be a symmetric square matrix");
    for (size_t i = 0; i < gram.rows(); ++i)
        if (gram(i, i) % 2 != 0)
            throw bad_input_error("surface spec: ns_gram is not even");
    if (emb.rows() != kH2Rank || emb.cols() != gram.rows())
        throw bad_input_error("surface spec: embedding must be 22 x rank(ns_gram)");
    if (!(emb.transposed() * k3_lattice().gram * emb == gram))
        throw bad_input_error("surface spec: embedding is not isometric for ns_gram");
    try {
        Sublattice probe(k3_lattice(), emb, true);
    } catch (const bad_input_error&) {
        throw bad_input_error("surface spec: embedding image is not primitive (saturated)");
    }
    return K3Surface::from_ns_embedding(emb);
}

MukaiVector parse_mukai_vector(const json& jv, const K3Surface& x) {
    if (!jv.is_object()) throw bad_input_error("v: expected an object");
    Int r = int_from_json(require_field(jv, "r"), "v.r");
    Int s = int_from_json(require_field(jv, "s"), "v.s");
    IntVec l;
    if (jv.contains("l")) {
        l = intvec_from_json(jv["l"], "v.l");
        if (l.size() != kH2Rank) throw bad_input_error("v.l: need 22 coordinates");
    } else if (jv.contains("l_ns")) {
        IntVec coeffs = intvec_from_json(jv["l_ns"], "v.l_ns");
        if (coeffs.size() != x.picard_rank())
            throw bad_input_error("v.l_ns: need one coefficient per NS basis vector");
        l = x.ns_embedding.matrix * coeffs;
    } else {
        throw bad_input_error("v: give the H^2 part as \"l\" or \"l_ns\"");
    }
    return MukaiVector(std::move(r), std::move(l), std::move(s));
}

namespace {

json checks_to_json(const TheoremChecks& c) {
    json j;
    j["quotient_even_unimodular_3_19"] = c.quotient_even_unimodular_3_19;
    j["phi_isometric_embedding"] = c.phi_isometric_embedding;
    j["cokernel_cyclic_order_n"] = c.cokernel_cyclic_order_n;
    j["lambda_divisibility"] = c.lambda_divisibility;
    j["obstruction_generators_valid"] = c.obstruction_generators_valid;
    j["rank_split_consistent"] = c.rank_split_consistent;
    return j;
}

json brauer_class_to_json(const BrauerClass& alpha) {
    json j;
    j["values"] = ratvec_to_json(alpha.values);
    j["order"] = int_to_json(order(alpha));
    return j;
}

json moduli_report_to_json(const ModuliReport& rep) {
    json j;
    j["n"] = int_to_json(rep.n);
    if (rep.quotient) {
        json h;
        h["gram"] = matrix_to_json(rep.quotient->h2m.gram);
        FormFlags f = classify_form(rep.quotient->h2m);
        Signature sig = signature(rep.quotient->h2m);
        h["even"] = f.even;
        h["determinant"] = int_to_json(determinant(rep.quotient->h2m));
        h["signature"] = json::array({sig.positive, sig.negative});
        j["h2m"] = h;
    } else {
        j["h2m"] = nullptr;
    }
    j["ns_m_basis"] = rep.ns_m ? matrix_to_json(rep.ns_m->basis) : json(nullptr);
    j["t_m_basis"] = rep.t_m ? matrix_to_json(rep.t_m->basis) : json(nullptr);
    j["phi_matrix"] = rep.phi ? matrix_to_json(rep.phi->matrix) : json(nullptr);
    if (rep.lambda) {
        json l;
        l["t_coords"] = intvec_to_json(rep.lambda->t_coords);
        l["h2_coords"] = intvec_to_json(rep.lambda->h2_coords);
        j["lambda"] = l;
    } else {
        j["lambda"] = nullptr;
    }
    json coker;
    coker["invariant_factors"] = intvec_to_json(rep.cokernel_invariant_factors);
    coker["generator_t_m_coords"] = intvec_to_json(rep.cokernel_generator);
    j["cokernel"] = coker;
    json gens = json::array();
    for (const BrauerClass& g : rep.obstruction_generators)
        gens.push_back(brauer_class_to_json(g));
    j["obstruction_generators"] = gens;
    j["checks"] = checks_to_json(rep.checks);
    j["all_checks_pass"] = rep.checks.all_pass();
    return j;
}

json analyze_one(const json& jrun, bool& all_pass) {
    K3Surface x = parse_surface_spec(require_field(jrun, "surface"));
    MukaiVector v = parse_mukai_vector(require_field(jrun, "v"), x);
    ModuliProblem p(std::move(x), std::move(v));  // admissibility errors surface here
    ModuliReport rep = verify_theorem_suite(p);
    if (!rep.checks.all_pass()) all_pass = false;
    json out = moduli_report_to_json(rep);
    MukaiVector u = find_u_unit(p);
    json ju;
    ju["r"] = int_to_json(u.r);
    ju["l"] = intvec_to_json(u.l);
    ju["s"] = int_to_json(u.s);
    ju["pairing_with_v"] = int_to_json(mukai_pairing(u, p.v));
    out["u_unit"] = ju;
    return out;
}

CommandOutcome run_analyze_moduli(const json& input) {
    CommandOutcome out;
    out.report = envelope("analyze-moduli", input);
    bool all_pass = true;
    if (input.contains("runs")) {
        if (!input["runs"].is_array())
            throw bad_input_error("runs: expected an array");
        json results = json::array();
        for (const json& jrun : input["runs"]) results.push_back(analyze_one(jrun, all_pass));
        out.report["results"] = results;
    } else {
        out.report["result"] = analyze_one(input, all_pass);
    }
    out.exit_code = all_pass ? 0 : 2;
    return out;
}

struct BrauerSetup {
    K3Surface x;
    BrauerClass alpha;
};

BrauerSetup parse_brauer_input(const json& input) {
    K3Surface x = parse_surface_spec(require_field(input, "surface"));
    RatVec w = ratvec_from_json(require_field(input, "w"), "w");
    if (w.size() != kH2Rank) throw bad_input_error("w: need 22 coordinates");
    BrauerClass alpha = brauer_from_h2_class(x, w);
    return BrauerSetup{std::move(x), std::move(alpha)};
}

json brauer_result(const BrauerSetup& setup) {
    json res;
    res["t_basis"] = matrix_to_json(setup.x.transcendental.basis);
    res["values"] = ratvec_to_json(setup.alpha.values);
    res["order"] = int_to_json(order(setup.alpha));
    return res;
}

CommandOutcome run_brauer_order(const json& input) {
    CommandOutcome out;
    out.report = envelope("brauer-order", input);
    out.report["result"] = brauer_result(parse_brauer_input(input));
    return out;
}

CommandOutcome run_brauer_kernel(const json& input) {
    CommandOutcome out;
    out.report = envelope("brauer-kernel", input);
    BrauerSetup setup = parse_brauer_input(input);
    json res = brauer_result(setup);
    Sublattice ker = kernel(setup.alpha);
    res["kernel_basis_t_coords"] = matrix_to_json(ker.basis);
    res["kernel_basis_h2_coords"] = matrix_to_json(setup.x.transcendental.basis * ker.basis);
    QuotientStructure qs =
        quotient_structure(ker, Sublattice::full(setup.alpha.domain.as_lattice()));
    res["index"] = int_to_json(qs.group.order());
    res["quotient_invariant_factors"] = intvec_to_json(qs.group.invariant_factors);
    out.report["result"] = res;
    return out;
}

CommandOutcome run_dp_check(const json& input) {
    CommandOutcome out;
    out.report = envelope("dp-check", input);
    IntMatrix gram = matrix_from_json(require_field(input, "gram"), "gram");
    Lattice t(gram);
    Sublattice full = Sublattice::full(t);
    RatVec va = ratvec_from_json(require_field(input, "alpha"), "alpha");
    RatVec vb = ratvec_from_json(require_field(input, "beta"), "beta");
    if (va.size() != t.rank() || vb.size() != t.rank())
        throw bad_input_error("alpha/beta: need one value per basis vector");
    TwistedPair pair(full, BrauerClass(full, va), BrauerClass(full, vb));
    Sublattice inter = kernel_intersection(pair);
    DpCheckResult check = dp_identity_check(pair);

    json res;
    res["order_alpha"] = int_to_json(order(pair.alpha));
    res["order_beta"] = int_to_json(order(pair.beta));
    res["kernel_alpha_basis"] = matrix_to_json(kernel(pair.alpha).basis);
    res["kernel_beta_basis"] = matrix_to_json(kernel(pair.beta).basis);
    res["intersection_basis"] = matrix_to_json(inter.basis);
    res["intersection_index"] =
        int_to_json(quotient_structure(inter, full).group.order());
    res["identity_holds"] = check.pass;
    res["witness"] = check.witness ? intvec_to_json(*check.witness) : json(nullptr);
    out.report["result"] = res;
    out.exit_code = check.pass ? 0 : 2;
    return out;
}

Nerve parse_nerve(const json& jn) {
    if (!jn.is_object()) throw bad_input_error("nerve: expected an object");
    if (jn.contains("complete_skeleton")) {
        const json& cs = jn["complete_skeleton"];
        Int vertices = int_from_json(require_field(cs, "vertices"), "nerve.vertices");
        Int dim = int_from_json(require_field(cs, "dim"), "nerve.dim");
        if (vertices < 1 || dim < 0 || dim > 3)
            throw bad_input_error("nerve: complete_skeleton needs vertices >= 1, dim in [0,3]");
        return Nerve::complete_skeleton(vertices.convert_to<size_t>(),
                                        dim.convert_to<int>());
    }
    Int vertices = int_from_json(require_field(jn, "vertices"), "nerve.vertices");
    if (vertices < 1) throw bad_input_error("nerve: vertices must be >= 1");
    std::vector<std::array<size_t, 2>> edges;
    std::vector<std::array<size_t, 3>> triangles;
    std::vector<std::array<size_t, 4>> tetrahedra;
    if (jn.contains("simplices")) {
        if (!jn["simplices"].is_array())
            throw bad_input_error("nerve.simplices: expected an array");
        for (const json& js : jn["simplices"]) {
            IntVec s = intvec_from_json(js, "nerve.simplices");
            std::vector<size_t> v;
            for (const Int& x : s) {
                if (x < 0) throw bad_input_error("nerve.simplices: negative vertex");
                v.push_back(x.convert_to<size_t>());
            }
            if (v.size() == 2)
                edges.push_back({v[0], v[1]});
            else if (v.size() == 3)
                triangles.push_back({v[0], v[1], v[2]});
            else if (v.size() == 4)
                tetrahedra.push_back({v[0], v[1], v[2], v[3]});
            else
                throw bad_input_error("nerve.simplices: simplices must have 2, 3, or 4 vertices");
        }
    }
    return Nerve(vertices.convert_to<size_t>(), std::move(edges), std::move(triangles),
                 std::move(tetrahedra));
}

CommandOutcome run_cech_h2(const json& input) {
    CommandOutcome out;
    out.report = envelope("cech-h2", input);
    Nerve nerve = parse_nerve(require_field(input, "nerve"));
    Int n = int_from_json(require_field(input, "modulus"), "modulus");
    if (n < 1) throw bad_input_error("modulus: must be at least 1");
    json res;
    res["simplex_counts"] = json::array({nerve.simplex_count(0), nerve.simplex_count(1),
                                         nerve.simplex_count(2), nerve.simplex_count(3)});
    res["h0_invariant_factors"] =
        intvec_to_json(cech_cohomology(nerve, 0, n).invariant_factors);
    res["h1_invariant_factors"] =
        intvec_to_json(cech_cohomology(nerve, 1, n).invariant_factors);
    res["h2_invariant_factors"] =
        intvec_to_json(cech_cohomology(nerve, 2, n).invariant_factors);
    out.report["result"] = res;
    return out;
}

CommandOutcome run_twist_class(const json& input) {
    CommandOutcome out;
    out.report = envelope("twist-class", input);
    K3Surface x = parse_surface_spec(require_field(input, "surface"));
    Int n = int_from_json(require_field(input, "n"), "n");
    if (n < 1) throw bad_input_error("n: must be at least 1");
    IntVec c1;
    if (input.contains("c1")) {
        c1 = intvec_from_json(input["c1"], "c1");
        if (c1.size() != kH2Rank) throw bad_input_error("c1: need 22 coordinates");
    } else if (input.contains("c1_ns")) {
        IntVec coeffs = intvec_from_json(input["c1_ns"], "c1_ns");
        if (coeffs.size() != x.picard_rank())
            throw bad_input_error("c1_ns: need one coefficient per NS basis vector");
        c1 = x.ns_embedding.matrix * coeffs;
    } else {
        throw bad_input_error("give the first Chern class as \"c1\" or \"c1_ns\"");
    }
    ModNClass t = topological_twisting_class(c1, n);
    BrauerClass lifted = p_map(x, t);
    BrauerClass direct = obstruction_from_bundle(x, c1, n);
    const bool agrees = (lifted == direct);
    json res;
    res["t_class"] = json{{"n", int_to_json(t.n)}, {"residues", intvec_to_json(t.residues)}};
    res["brauer_values"] = ratvec_to_json(lifted.values);
    res["order"] = int_to_json(order(lifted));
    res["agrees_with_minus_c1_over_n"] = agrees;
    out.report["result"] = res;
    out.exit_code = agrees ? 0 : 2;
    return out;
}

}  // namespace

CommandOutcome run_command(const std::string& command, const json& input) {
    static const std::map<std::string, CommandOutcome (*)(const json&)> dispatch = {
        {"analyze-moduli", run_analyze_moduli}, {"brauer-order", run_brauer_order},
        {"brauer-kernel", run_brauer_kernel},   {"dp-check", run_dp_check},
        {"cech-h2", run_cech_h2},               {"twist-class", run_twist_class}};
    auto it = dispatch.find(command);
    if (it == dispatch.end()) throw bad_input_error("unknown command: " + command);
    require_schema(input, command);
    return it->second(input);
}

std::string render_machine(const json& report) {
    return report.dump(2) + "\n";
}

namespace {

std::string factors_text(const json& factors) {
    if (!factors.is_array() || factors.empty()) return "trivial";
    std::string s;
    for (const json& f : factors) {
        if (!s.empty()) s += " x ";
        s += "Z/" + (f.is_string() ? f.get<std::string>() : f.dump());
    }
    return s;
}

void render_moduli_result(std::ostringstream& os, const json& res) {
    os << "  n = " << res["n"].dump() << "\n";
    if (res["h2m"].is_object()) {
        const json& h = res["h2m"];
        os << "  H2(M): even=" << (h["even"].get<bool>() ? "yes" : "no")
           << " det=" << h["determinant"].dump() << " signature=("
           << h["signature"][0].dump() << "," << h["signature"][1].dump() << ")\n";
    }
    if (res["ns_m_basis"].is_array() && res["t_m_basis"].is_array())
        os << "  rank NS_M = " << res["ns_m_basis"][0].size()
           << ", rank T_M = " << res["t_m_basis"][0].size() << "\n";
    os << "  cokernel of phi: " << factors_text(res["cokernel"]["invariant_factors"]) << "\n";
    if (res["lambda"].is_object())
        os << "  lambda (H2 coords): " << res["lambda"]["h2_coords"].dump() << "\n";
    os << "  obstruction generators: " << res["obstruction_generators"].size();
    if (!res["obstruction_generators"].empty())
        os << " (order " << res["obstruction_generators"][0]["order"].dump() << ")";
    os << "\n  checks:";
    for (const auto& [key, value] : res["checks"].items())
        os << " " << key << "=" << (value.get<bool>() ? "PASS" : "FAIL");
    os << "\n  all checks: "
       << (res["all_checks_pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
}

}  // namespace

std::string render_human(const json& report) {
    std::ostringstream os;
    const std::string command = report["command"].get<std::string>();
    os << "== " << command << " (" << report["tool"].get<std::string>() << ") ==\n";
    if (command == "analyze-moduli") {
        if (report.contains("results")) {
            size_t i = 1;
            for (const json& res : report["results"]) {
                os << "run " << i++ << ":\n";
                render_moduli_result(os, res);
            }
        } else {
            render_moduli_result(os, report["result"]);
        }
    } else if (command == "brauer-order") {
        os << "  order = " << report["result"]["order"].dump() << "\n";
        os << "  values on T basis: " << report["result"]["values"].dump() << "\n";
    } else if (command == "brauer-kernel") {
        os << "  order = " << report["result"]["order"].dump() << "\n";
        os << "  index [T : Ker] = " << report["result"]["index"].dump() << "\n";
        os << "  kernel quotient: "
           << factors_text(report["result"]["quotient_invariant_factors"]) << "\n";
    } else if (command == "dp-check") {
        const json& res = report["result"];
        os << "  order(alpha) = " << res["order_alpha"].dump()
           << ", order(beta) = " << res["order_beta"].dump() << "\n";
        os << "  [T : Ker(alpha) n Ker(beta)] = " << res["intersection_index"].dump() << "\n";
        os << "  restriction identity: "
           << (res["identity_holds"].get<bool>() ? "PASS" : "FAIL") << "\n";
    } else if (command == "cech-h2") {
        const json& res = report["result"];
        os << "  H0 = " << factors_text(res["h0_invariant_factors"]) << "\n";
        os << "  H1 = " << factors_text(res["h1_invariant_factors"]) << "\n";
        os << "  H2 = " << factors_text(res["h2_invariant_factors"]) << "\n";
    } else if (command == "twist-class") {
        const json& res = report["result"];
        os << "  topological class residues: " << res["t_class"]["residues"].dump() << "\n";
        os << "  induced Brauer class order: " << res["order"].dump() << "\n";
        os << "  agrees with [-c1/n]: "
           << (res["agrees_with_minus_c1_over_n"].get<bool>() ? "PASS" : "FAIL") << "\n";
    }
    return os.str();
}

}  // namespace k3moduli::io
