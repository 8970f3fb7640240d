// Command-line front end: monotones, exact-purity, mc-purity,
// verify-hierarchy, weingarten, selftest.

#include "opspace/averages.hpp"
#include "opspace/clifford.hpp"
#include "opspace/dense.hpp"
#include "opspace/ensembles.hpp"
#include "opspace/monotones.hpp"
#include "opspace/pauli.hpp"
#include "opspace/rational.hpp"
#include "opspace/replica_oracle.hpp"
#include "opspace/sym4.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace {

using namespace opspace;

// ---- output helpers --------------------------------------------------------

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

// Minimal ordered JSON object writer; floats go out with 17 significant
// digits per the output contract.
class JsonObj {
  public:
    JsonObj& add(const std::string& k, const std::string& v) {
        return raw(k, "\"" + json_escape(v) + "\"");
    }
    JsonObj& add(const std::string& k, const char* v) { return add(k, std::string(v)); }
    JsonObj& add(const std::string& k, double v) { return raw(k, fmt17(v)); }
    JsonObj& add(const std::string& k, int v) { return raw(k, std::to_string(v)); }
    JsonObj& add(const std::string& k, int64_t v) { return raw(k, std::to_string(v)); }
    JsonObj& add(const std::string& k, uint64_t v) { return raw(k, std::to_string(v)); }
    JsonObj& add(const std::string& k, bool v) { return raw(k, v ? "true" : "false"); }
    JsonObj& add_null(const std::string& k) { return raw(k, "null"); }
    JsonObj& raw(const std::string& k, const std::string& json) {
        if (!first_) body_ += ",";
        first_ = false;
        body_ += "\"" + json_escape(k) + "\":" + json;
        return *this;
    }
    std::string str() const { return "{" + body_ + "}"; }

  private:
    std::string body_;
    bool first_ = true;
};

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << content;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoi(tok));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("OPSPACE_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

EnsembleSpec make_spec(const std::string& name, int n, int ell, int tau) {
    if (name == "haar") return EnsembleSpec::haar(n);
    if (name == "clifford") return EnsembleSpec::clifford(n);
    if (name == "nu" || name == "nu_compressible") return EnsembleSpec::nu_compressible(n, ell);
    if (name == "tdoped" || name == "t_doped") return EnsembleSpec::t_doped(n, tau);
    throw std::invalid_argument("unknown ensemble: " + name);
}

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

// ---- subcommand state ------------------------------------------------------

struct Args {
    std::string out;
    uint64_t seed = 0;
    int threads = 0;
    bool deterministic = false;
    // monotones
    std::string circuit_path;
    std::string initial;
    std::string cut = "";
    std::string alphas = "0.5,1,2";
    // ensembles / purity
    std::string ensemble = "haar";
    int n = 4;
    int64_t d_a = 0;
    int ell = 0;
    int tau = 0;
    double theta = std::numbers::pi / 4;
    std::string backend = "both";
    int64_t samples = 1000;
    // weingarten
    long wg_d = 8;
    std::string wg_kind = "clifford";
};

void add_common(CLI::App* cmd, Args& a) {
    cmd->add_option("--out", a.out, "output file (default stdout)");
    cmd->add_option("--seed", a.seed, "RNG seed");
    cmd->add_option("--threads", a.threads, "worker threads (env OPSPACE_THREADS fallback)");
    cmd->add_flag("--deterministic", a.deterministic, "suppress timestamp in output");
}

void echo_config(JsonObj& config, const Args& a) {
    if (!a.deterministic) config.add("timestamp", iso_timestamp());
}

// ---- monotones -------------------------------------------------------------

int run_monotones(const Args& a) {
    Circuit circuit = load_circuit(a.circuit_path);
    int n = circuit.n_qubits;
    PauliString initial =
        a.initial.empty() ? PauliString::single(n, 0, 'Z') : parse_pauli(a.initial);
    if (initial.n != n)
        throw std::invalid_argument("--initial has " + std::to_string(initial.n) +
                                    " letters, circuit has " + std::to_string(n) + " qubits");
    std::vector<int> cut_sites =
        a.cut.empty() ? std::vector<int>{} : parse_int_list(a.cut);
    if (cut_sites.empty())
        for (int q = 0; q < std::max(1, n / 2); ++q) cut_sites.push_back(q);
    Bipartition cut = Bipartition::from_sites(n, cut_sites);
    std::vector<double> alphas = parse_double_list(a.alphas);

    MatrixC u = circuit_to_dense(circuit);
    MatrixC o_u = heisenberg_conjugate(u, pauli_to_dense(initial));

    JsonObj config;
    config.add("subcommand", "monotones")
        .add("circuit", a.circuit_path)
        .add("initial", initial.str())
        .add("cut", a.cut.empty() ? "(default)" : a.cut)
        .add("alphas", a.alphas);
    echo_config(config, a);

    std::string warn;
    std::string loe_body, ose_body;
    bool first = true;
    for (double al : alphas) {
        if (!first) {
            loe_body += ",";
            ose_body += ",";
        }
        first = false;
        loe_body += "\"" + fmt17(al) + "\":" + fmt17(loe(o_u, cut, RenyiIndex::of(al)));
        ose_body += "\"" + fmt17(al) + "\":" + fmt17(ose(o_u, RenyiIndex::of(al), &warn));
    }

    JsonObj result;
    result.raw("config", config.str());
    result.raw("loe", "{" + loe_body + "}");
    result.raw("ose", "{" + ose_body + "}");
    if (n <= 5) {
        NullityResult nr = unitary_nullity(u);
        result.add("nullity", nr.nu).add("stab_count", nr.stab_count);
        if (!nr.count_is_power_of_two) result.add("nullity_warning", nr.diagnostics);
    } else {
        result.add_null("nullity");
        result.add("nullity_note", "N > 5: nullity skipped (cost 16^N)");
    }
    try {
        result.add("t_count", t_count(circuit));
    } catch (const std::invalid_argument& e) {
        result.add_null("t_count");
        result.add("t_count_note", e.what());
    }
    if (!warn.empty()) result.add("warning", warn);
    write_output(a.out, result.str());
    return 0;
}

// ---- exact-purity ----------------------------------------------------------

int run_exact_purity(const Args& a) {
    int n = a.n;
    int64_t D = int64_t{1} << n;
    int64_t d_a = a.d_a > 0 ? a.d_a : (int64_t{1} << (n / 2));
    bool want_closed = a.backend == "closed" || a.backend == "both";
    bool want_sum = a.backend == "sum" || a.backend == "both";
    if (!want_closed && !want_sum) throw std::invalid_argument("--backend must be closed|sum|both");

    JsonObj config;
    config.add("subcommand", "exact-purity")
        .add("ensemble", a.ensemble)
        .add("N", n)
        .add("dA", d_a)
        .add("backend", a.backend);
    if (a.ensemble == "nu" || a.ensemble == "nu_compressible") config.add("ell", a.ell);
    if (a.ensemble == "tdoped" || a.ensemble == "t_doped")
        config.add("tau", a.tau).add("theta", a.theta);
    echo_config(config, a);

    std::optional<Rational> closed, sum;
    std::string note;
    if (a.ensemble == "haar") {
        if (want_closed) closed = haar_avg_purity(D, d_a);
        if (want_sum) sum = haar_avg_purity_weingarten_sum(D, d_a);
    } else if (a.ensemble == "nu" || a.ensemble == "nu_compressible") {
        if (want_closed) closed = nu_compressible_purity_closed(n, d_a, a.ell);
        if (want_sum) sum = nu_compressible_purity_sum(n, d_a, a.ell);
    } else if (a.ensemble == "tdoped" || a.ensemble == "t_doped") {
        double k_real = a.theta / (std::numbers::pi / 4);
        long k = std::lround(k_real);
        if (std::abs(k_real - static_cast<double>(k)) > 1e-12)
            throw std::invalid_argument("exact-purity: theta must be a multiple of pi/4");
        if (want_sum) sum = t_doped_purity_sum(n, d_a, a.tau, static_cast<int>(k));
        if (want_closed) {
            if (d_a * d_a == D && k == 1) {
                closed = t_doped_purity_closed_halfcut(n, a.tau);
                note = "closed form is the half-cut cross-check expression; "
                       "the assembled sum backend is authoritative";
            } else {
                note = "no closed-form cross-check for this cut/angle; sum backend only";
            }
        }
    } else {
        throw std::invalid_argument("exact-purity: ensemble must be haar|nu|tdoped");
    }

    JsonObj result;
    result.raw("config", config.str());
    if (closed) {
        result.add("closed", to_double(*closed));
        result.add("closed_rational", rational_str(*closed));
    } else {
        result.add_null("closed");
    }
    if (sum) {
        result.add("sum", to_double(*sum));
        result.add("sum_rational", rational_str(*sum));
    } else {
        result.add_null("sum");
    }
    if (closed && sum) result.add("diff", std::abs(to_double(*closed - *sum)));
    if (!note.empty()) result.add("note", note);
    write_output(a.out, result.str());
    return 0;
}

// ---- mc-purity --------------------------------------------------------------

int run_mc_purity(const Args& a) {
    EnsembleSpec spec = make_spec(a.ensemble, a.n, a.ell, a.tau);
    std::vector<int> cut_sites =
        a.cut.empty() ? std::vector<int>{} : parse_int_list(a.cut);
    if (cut_sites.empty())
        for (int q = 0; q < std::max(1, a.n / 2); ++q) cut_sites.push_back(q);
    Bipartition cut = Bipartition::from_sites(a.n, cut_sites);
    int threads = resolve_threads(a.threads);
    McPurityResult r = mc_purity(spec, cut, a.samples, a.seed, threads);

    std::ostringstream csv;
    csv << "# subcommand=mc-purity ensemble=" << a.ensemble << " N=" << a.n;
    if (spec.kind == EnsembleKind::NuCompressible) csv << " ell=" << a.ell;
    if (spec.kind == EnsembleKind::TDoped) csv << " tau=" << a.tau;
    csv << " cut=" << (a.cut.empty() ? "(default)" : a.cut) << " samples=" << a.samples
        << " seed=" << a.seed << "\n";
    if (!a.deterministic) csv << "# timestamp=" << iso_timestamp() << "\n";
    csv << "sample_index,purity,loe2_bits\n";
    for (size_t i = 0; i < r.purities.size(); ++i)
        csv << i << "," << fmt17(r.purities[i]) << "," << fmt17(-std::log2(r.purities[i])) << "\n";
    write_output(a.out, csv.str());

    if (!a.out.empty()) {
        JsonObj summary;
        summary.add("mean", r.estimate.mean)
            .add("std_error", r.estimate.std_error)
            .add("n_samples", r.estimate.n_samples)
            .add("seed", r.estimate.seed)
            .add("threads", threads)
            .add("out", a.out);
        std::cout << summary.str() << "\n";
    }
    return 0;
}

// ---- verify-hierarchy --------------------------------------------------------

int run_verify_hierarchy(const Args& a) {
    EnsembleSpec spec = make_spec(a.ensemble, a.n, a.ell, a.tau);
    std::vector<double> alphas = parse_double_list(a.alphas);
    int threads = resolve_threads(a.threads);
    HierarchyReport rep = verify_hierarchy(spec, a.samples, alphas, a.seed, threads);

    JsonObj config;
    config.add("subcommand", "verify-hierarchy")
        .add("ensemble", a.ensemble)
        .add("N", a.n)
        .add("tau", a.tau)
        .add("samples", a.samples)
        .add("alphas", a.alphas)
        .add("seed", a.seed)
        .add("threads", threads);
    echo_config(config, a);

    JsonObj result;
    result.raw("config", config.str());
    result.add("samples", rep.n_samples)
        .add("tuples", static_cast<int64_t>(rep.rows.size()))
        .add("violations", rep.violations)
        .add("max_excess_bits", rep.max_excess);
    std::cout << result.str() << "\n";  // summary always on stdout
    if (!a.out.empty()) {
        std::ostringstream csv;
        csv << "sample,alpha,cut,loe_bits,ose_bits,nu,tau\n";
        for (const auto& r : rep.rows)
            csv << r.sample << "," << fmt17(r.alpha) << "," << r.cut << "," << fmt17(r.loe_bits)
                << "," << fmt17(r.ose_bits) << "," << r.nu << "," << r.tau << "\n";
        std::ofstream f(a.out, std::ios::binary);
        f << csv.str();
    }
    return rep.violations == 0 ? 0 : 1;
}

// ---- weingarten ---------------------------------------------------------------

int run_weingarten(const Args& a) {
    const S4Tables& t = S4Tables::get();
    const WeingartenTables& wt = weingarten_tables(a.wg_d);
    std::ostringstream csv;
    csv << "# weingarten d=" << a.wg_d << " kind=" << a.wg_kind << "\n";
    if (!a.deterministic) csv << "# timestamp=" << iso_timestamp() << "\n";
    auto dump = [&](const char* name, const Mat24<Rational>& m) {
        csv << "matrix," << name << "\n";
        csv << "pi\\sigma";
        for (int s = 0; s < 24; ++s) csv << "," << t.cycle_notation[s];
        csv << "\n";
        for (int p = 0; p < 24; ++p) {
            csv << t.cycle_notation[p];
            for (int s = 0; s < 24; ++s) csv << "," << fmt17(to_double(m[p][s]));
            csv << "\n";
        }
    };
    if (a.wg_kind == "haar") {
        dump("Wg", wt.wg0);
    } else if (a.wg_kind == "clifford") {
        dump("Wg+", wt.wgp);
        dump("Wg-", wt.wgm);
    } else {
        throw std::invalid_argument("weingarten: kind must be haar|clifford");
    }
    write_output(a.out, csv.str());
    return 0;
}

// ---- selftest -----------------------------------------------------------------

struct SelfTest {
    int failures = 0;
    void check(const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "PASS " : "FAIL ") << name;
        if (!ok && !detail.empty()) std::cout << "  [" << detail << "]";
        std::cout << "\n";
        if (!ok) ++failures;
    }
};

int run_selftest(const Args&) {
    SelfTest st;
    const S4Tables& t = S4Tables::get();
    st.check("s4 character orthogonality", t.verify_character_orthogonality());

    // Projected replica traces against the dense four-replica oracle at N = 1, 2.
    for (int n = 1; n <= 2; ++n) {
        int64_t d = int64_t{1} << n;
        MatrixC lp = lambda_plus_dense(n);
        MatrixC o4 = kron4(pauli_to_dense(PauliString::single(n, 0, 'Z')));
        double worst = 0.0;
        for (int p = 0; p < 24; ++p) {
            MatrixC tp = t_perm_dense(p, d);
            double plus = (lp * tp).trace().real();
            double plus_o4 = (o4 * lp * tp).trace().real();
            double minus_o4 = (o4 * (MatrixC::Identity(lp.rows(), lp.cols()) - lp) * tp)
                                  .trace()
                                  .real();
            worst = std::max(worst,
                             std::abs(plus - to_double(replica_pauli_trace(p, Rational(d),
                                                                    LambdaKind::Plus))));
            worst = std::max(worst, std::abs(plus_o4 - to_double(replica_pauli_trace(
                                                 p, Rational(d), LambdaKind::PlusWithO4))));
            worst = std::max(worst, std::abs(minus_o4 - to_double(replica_pauli_trace(
                                                 p, Rational(d), LambdaKind::MinusWithO4))));
        }
        st.check("replica traces dense oracle N=" + std::to_string(n), worst <= 1e-9,
                 "max dev " + fmt17(worst));
    }

    // Rotation sandwich: f_sigma(0) = 2^(#sigma - 2 delta); pi/4 exact vs dense.
    {
        auto f0 = f_sigma_exact(0);
        bool ok = true;
        for (int s = 0; s < 24; ++s)
            ok = ok && f0[s] == pow2(t.cycles[s] - 2 * t.delta_o[s]);
        st.check("f_sigma(0) identity", ok);
        auto fe = f_sigma_exact(1);
        auto fd = f_sigma(std::numbers::pi / 4);
        double worst = 0.0;
        for (int s = 0; s < 24; ++s) worst = std::max(worst, std::abs(fd[s] - to_double(fe[s])));
        st.check("f_sigma(pi/4) exact vs dense", worst <= 1e-12, "max dev " + fmt17(worst));
    }

    // Boundary traces against the dense T' oracle at N = 2.
    {
        double worst = 0.0;
        for (uint64_t amask : {1ULL, 2ULL}) {
            Bipartition b;
            b.n = 2;
            b.a_mask = amask;
            MatrixC tprime = t_prime_dense(b);
            MatrixC lp = lambda_plus_dense(2);
            for (int s = 0; s < 24; ++s) {
                MatrixC ts = t_perm_dense(s, 4);
                double plain = (ts * tprime).trace().real();
                double with_l = (lp * ts * tprime).trace().real();
                worst = std::max(worst, std::abs(plain - to_double(boundary_trace(
                                                     s, Rational(2), Rational(2), false))));
                worst = std::max(worst, std::abs(with_l - to_double(boundary_trace(
                                                     s, Rational(2), Rational(2), true))));
            }
        }
        st.check("boundary traces dense oracle N=2", worst <= 1e-9, "max dev " + fmt17(worst));
    }

    // Weingarten Gram identity (exact) for d >= 4.
    for (long d : {4L, 8L}) {
        const WeingartenTables& wt = weingarten_tables(d);
        bool ok = true;
        for (int p = 0; p < 24 && ok; ++p)
            for (int tau = 0; tau < 24 && ok; ++tau) {
                Rational acc = 0;
                for (int s = 0; s < 24; ++s)
                    acc += wt.wg0[p][s] *
                           rational_pow(Rational(d), t.cycles[t.compose[s][tau]]);
                ok = acc == (p == tau ? Rational(1) : Rational(0));
            }
        st.check("haar weingarten gram inverse d=" + std::to_string(d), ok);
    }

    // Exhaustive single-qubit Clifford twirl vs the generalized Weingarten
    // formula.
    {
        auto group = enumerate_single_qubit_cliffords();
        bool count_ok = group.size() == 24;
        Rng rng(12345);
        MatrixC x(16, 16);
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) x(i, j) = Complex(rng.normal(), rng.normal());
        MatrixC exhaustive = MatrixC::Zero(16, 16);
        for (const auto& c : group) {
            MatrixC u = kron4(tableau_to_dense(c));
            exhaustive += u.adjoint() * x * u;
        }
        exhaustive /= static_cast<double>(group.size());
        const WeingartenTables& wt = weingarten_tables(2);
        MatrixC lp = lambda_plus_dense(1);
        MatrixC id = MatrixC::Identity(16, 16);
        std::vector<MatrixC> mp(24), mm(24);
        for (int p = 0; p < 24; ++p) {
            MatrixC tp = t_perm_dense(p, 2);
            mp[p] = lp * tp;
            mm[p] = tp - mp[p];
        }
        MatrixC formula = MatrixC::Zero(16, 16);
        for (int p = 0; p < 24; ++p) {
            Complex trp = (x * mp[p]).trace();
            Complex trm = (x * mm[p]).trace();
            for (int s = 0; s < 24; ++s) {
                formula += to_double(wt.wgp[p][s]) * trp * mp[s];
                formula += to_double(wt.wgm[p][s]) * trm * mm[s];
            }
        }
        double dev = (exhaustive - formula).cwiseAbs().maxCoeff();
        st.check("exhaustive N=1 clifford twirl", count_ok && dev <= 1e-10,
                 "group " + std::to_string(group.size()) + ", max dev " + fmt17(dev));
    }

    // Page-value evaluations and the general-cut <-> half-cut identity.
    {
        bool ok1 = haar_avg_purity(4, 2) == Rational(17, 35);
        bool ok2 = haar_avg_purity(16, 4) == Rational(509, 4199);
        bool ok3 = true;
        for (int n : {2, 4, 6}) {
            int64_t D = int64_t{1} << n;
            int64_t dA = int64_t{1} << (n / 2);
            Rational d(D);
            Rational halfcut = (2 * d * d + d - 19) / ((1 + d) * (d * d - 9));
            ok3 = ok3 && haar_avg_purity(D, dA) == halfcut;
        }
        st.check("haar page values 17/35, 509/4199, general==half-cut", ok1 && ok2 && ok3);
        double dev = std::abs(to_double(haar_avg_purity(16, 4) -
                                        haar_avg_purity_weingarten_sum(16, 4)));
        st.check("haar closed vs weingarten sum", dev <= 1e-12, fmt17(dev));
    }

    // nu-compressible: ell = N reduces to Haar; ell = 0 is 1.
    {
        Rational diff = nu_compressible_purity_sum(4, 4, 4) - haar_avg_purity(16, 4);
        st.check("nu sum at ell=N equals haar",
                 std::abs(to_double(diff)) <= 1e-12, fmt17(to_double(diff)));
        st.check("nu ell=0 is exactly 1", nu_compressible_purity_sum(4, 4, 0) == 1);
    }

    // T-doped: tau = 0 assembly is exactly 1; tau -> infinity approaches Haar.
    {
        st.check("tdoped assembly at tau=0 is exactly 1",
                 t_doped_assembly_value(4, 4, 0) == 1);
        double inf_dev = std::abs(to_double(t_doped_purity_sum(4, 4, 300)) -
                                  to_double(haar_avg_purity(16, 4)));
        st.check("tdoped tau=300 reaches haar within 1e-8", inf_dev <= 1e-8, fmt17(inf_dev));
    }

    std::cout << (st.failures == 0 ? "selftest OK" : "selftest FAILED") << "\n";
    return st.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator-space entanglement and magic monotones"};
    app.require_subcommand(1);
    Args a;

    CLI::App* c_mono = app.add_subcommand("monotones", "LOE/OSE/nullity/T-count of a circuit");
    c_mono->add_option("--circuit", a.circuit_path, "circuit JSON file")->required();
    c_mono->add_option("--initial", a.initial, "initial Pauli, e.g. +XIZ (default Z on qubit 0)");
    c_mono->add_option("--cut", a.cut, "comma-separated A sites, e.g. 0,1");
    c_mono->add_option("--alphas", a.alphas, "comma-separated Renyi indices");
    add_common(c_mono, a);

    CLI::App* c_exact = app.add_subcommand("exact-purity", "exact ensemble-average purity");
    c_exact->add_option("--ensemble", a.ensemble, "haar|nu|tdoped")->required();
    c_exact->add_option("--N", a.n, "qubit count")->required();
    c_exact->add_option("--dA", a.d_a, "subsystem dimension (default 2^(N/2))");
    c_exact->add_option("--ell", a.ell, "Haar-block width for nu ensemble");
    c_exact->add_option("--tau", a.tau, "T count for tdoped ensemble");
    c_exact->add_option("--theta", a.theta, "rotation angle (default pi/4)");
    c_exact->add_option("--backend", a.backend, "closed|sum|both");
    add_common(c_exact, a);

    CLI::App* c_mc = app.add_subcommand("mc-purity", "Monte Carlo purity estimate");
    c_mc->add_option("--ensemble", a.ensemble, "haar|clifford|nu|tdoped")->required();
    c_mc->add_option("--N", a.n, "qubit count")->required();
    c_mc->add_option("--ell", a.ell, "Haar-block width for nu ensemble");
    c_mc->add_option("--tau", a.tau, "T count for tdoped ensemble");
    c_mc->add_option("--cut", a.cut, "comma-separated A sites");
    c_mc->add_option("--samples", a.samples, "sample count")->required();
    add_common(c_mc, a);

    CLI::App* c_vh = app.add_subcommand("verify-hierarchy", "per-sample E<=M<=nu<=tau check");
    c_vh->add_option("--ensemble", a.ensemble, "clifford|tdoped")->required();
    c_vh->add_option("--N", a.n, "qubit count")->required();
    c_vh->add_option("--tau", a.tau, "T count for tdoped ensemble");
    c_vh->add_option("--samples", a.samples, "sample count")->required();
    c_vh->add_option("--alphas", a.alphas, "comma-separated Renyi indices");
    add_common(c_vh, a);

    CLI::App* c_wg = app.add_subcommand("weingarten", "dump Weingarten tables as CSV");
    c_wg->add_option("--d", a.wg_d, "dimension parameter")->required();
    c_wg->add_option("--kind", a.wg_kind, "haar|clifford");
    add_common(c_wg, a);

    CLI::App* c_self = app.add_subcommand("selftest", "run built-in oracle checks");
    add_common(c_self, a);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_mono->parsed()) return run_monotones(a);
        if (c_exact->parsed()) return run_exact_purity(a);
        if (c_mc->parsed()) return run_mc_purity(a);
        if (c_vh->parsed()) return run_verify_hierarchy(a);
        if (c_wg->parsed()) return run_weingarten(a);
        if (c_self->parsed()) return run_selftest(a);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
