#include "nthcoeff/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "nthcoeff/bigindex.hpp"
#include "nthcoeff/diagonal.hpp"
#include "nthcoeff/errors.hpp"
#include "nthcoeff/kernels.hpp"
#include "nthcoeff/mahler.hpp"
#include "nthcoeff/oracle.hpp"
#include "nthcoeff/parse.hpp"
#include "nthcoeff/partialpow.hpp"

namespace nth {

namespace {

constexpr int kExitOK = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitCertificate = 3;

// Ceilings that turn a hopeless request into a clean rejection instead of an
// out-of-memory kill: the naive method and expand materialize N terms, the
// mahler tables hold ~d*h*p^d residues, and linrep emits p digit matrices.
constexpr u64 kNaiveIndexMax = 1'000'000;
constexpr u64 kExpandOrderMax = 1'000'000;
constexpr double kMahlerStateMax = 1e8;
constexpr u64 kLinrepPrimeMax = 100'000;

std::string term_string(u64 c, std::size_t i, std::size_t j) {
    if (i == 0 && j == 0) return std::to_string(c);
    std::string s;
    if (c != 1) s = std::to_string(c);
    auto factor = [&s](char var, std::size_t e) {
        if (e == 0) return;
        if (!s.empty()) s += '*';
        s += var;
        if (e > 1) {
            s += '^';
            s += std::to_string(e);
        }
    };
    factor('x', i);
    factor('y', j);
    return s;
}

void join_term(std::string& acc, std::string term) {
    if (!acc.empty()) acc += " + ";
    acc += term;
}

struct Instance {
    PrimeField F;
    BiPoly E;
};

Instance make_instance(u64 p, const std::string& text, std::ostream& err) {
    PrimeField F(p);
    BiPoly E = parse_poly(text, F);
    check_algebraic_input(E);
    if (E.degy() == 1)
        err << "warning: E has y-degree 1, so the series is rational; "
               "all methods remain valid\n";
    return Instance{F, E};
}

void deliver(const std::string& payload, const std::string& outpath, std::ostream& out) {
    if (outpath.empty()) {
        out << payload;
        return;
    }
    std::ofstream f(outpath, std::ios::binary);
    if (!f) throw InvalidInput("cannot open output file: " + outpath);
    f << payload;
    f.flush();
    if (!f.good()) throw InvalidInput("failed writing output file: " + outpath);
}

void guard_mahler_size(const BiPoly& E) {
    const double d = double(E.degy());
    const double h = double(std::max(E.degx(), 1));
    const double est = d * h * std::pow(double(E.F.p), d);
    if (est > kMahlerStateMax)
        throw InvalidInput("mahler method infeasible here: the equation tables need "
                           "on the order of d*h*p^d entries");
}

u64 coeff_by_method(const Instance& ins, const BigIndex& N, Method m) {
    switch (resolve_auto(m, ins.F)) {
        case Method::naive: {
            if (!N.fits_u64() || N.to_u64() > kNaiveIndexMax)
                throw InvalidInput("naive method supports N <= 10^6 only");
            const std::size_t n = std::size_t(N.to_u64());
            return expand_newton(ins.E, n + 1).prefix.coeff(n);
        }
        case Method::mahler:
            guard_mahler_size(ins.E);
            return coeff_via_mahler(ins.E, N);
        case Method::diagonal:
            return coeff_via_diagonal(ins.E, N);
        case Method::diagonal_fast:
            return coeff_via_diagonal_fast(ins.E, N);
        case Method::auto_pick:
            break;  // unreachable: resolve_auto never returns auto_pick
    }
    throw std::logic_error("unresolved method");
}

// ---------------------------------------------------------------------------
// bench support

// Digit matrices read straight from the packed power grid, so the dense
// method can answer queries at sizes where a 64-bit copy of b^{p-1} would
// not fit in memory.  Single-threaded use; the cache needs no lock.
struct PackedRep {
    PrimeField F;
    std::size_t dx = 0, dy = 0, m = 0;
    std::vector<u64> L, C;
    const PackedPower* P = nullptr;
    mutable std::map<u64, std::vector<u64>> cache;

    PackedRep(const DiagonalRep& rep, const PackedPower* packed)
        : F(rep.F),
          dx(rep.dx),
          dy(rep.dy),
          m((rep.dx + 1) * (rep.dy + 1)),
          L(m, 0),
          C(m, 0),
          P(packed) {
        L[0] = 1;
        const u64 ib = F.inv(rep.b00);
        for (std::size_t i = 0; i <= dx; ++i)
            for (std::size_t j = 0; j <= dy; ++j) C[i * (dy + 1) + j] = F.mul(rep.a.at(i, j), ib);
    }

    const std::vector<u64>& matrix(u64 r) const {
        auto it = cache.find(r);
        if (it == cache.end()) it = cache.emplace(r, matrix_for_digit(F, dx, dy, *P, r)).first;
        return it->second;
    }
};

struct BenchSetup {
    Method method = Method::diagonal_fast;
    std::optional<FastLinearRep> fast;
    std::optional<DiagonalRep> rep;
    std::optional<PackedPower> packed;
    std::optional<PackedRep> packed_rep;
    std::optional<MahlerPipeline> mahler;
    double pre_ms = 0;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

BenchSetup bench_prepare(const Instance& ins, Method m) {
    BenchSetup s;
    s.method = resolve_auto(m, ins.F);
    const auto t0 = std::chrono::steady_clock::now();
    switch (s.method) {
        case Method::naive:
            break;  // no precomputation
        case Method::mahler:
            guard_mahler_size(ins.E);
            s.mahler.emplace(mahler_precompute(ins.E));
            break;
        case Method::diagonal:
            s.rep.emplace(furstenberg(ins.E));
            s.packed.emplace(dense_power_packed(s.rep->b));
            s.packed_rep.emplace(*s.rep, &*s.packed);
            break;
        case Method::diagonal_fast:
            s.fast.emplace(diagonal_fast_precompute(ins.E));
            break;
        case Method::auto_pick:
            throw std::logic_error("unresolved method");
    }
    s.pre_ms = ms_since(t0);
    return s;
}

u64 bench_query(const Instance& ins, const BenchSetup& s, const BigIndex& N) {
    switch (s.method) {
        case Method::naive: {
            if (!N.fits_u64() || N.to_u64() > kNaiveIndexMax)
                throw InvalidInput("naive method supports N <= 10^6 only");
            const std::size_t n = std::size_t(N.to_u64());
            return expand_newton(ins.E, n + 1).prefix.coeff(n);
        }
        case Method::mahler:
            return mahler_coeff(*s.mahler, N);
        case Method::diagonal:
            return detail::fold_digit_matrices(*s.packed_rep, N);
        case Method::diagonal_fast:
            return linrep_coeff(*s.fast, N);
        case Method::auto_pick:
            break;
    }
    throw std::logic_error("unresolved method");
}

const char* method_name(Method m) {
    switch (m) {
        case Method::naive: return "naive";
        case Method::mahler: return "mahler";
        case Method::diagonal: return "diagonal";
        case Method::diagonal_fast: return "diagonal-fast";
        case Method::auto_pick: return "auto";
    }
    return "?";
}

BigIndex random_index(u64 seed, u64 ndigits) {
    if (ndigits == 0) throw InvalidInput("digit count must be positive");
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (ndigits + 1)));
    BigIndex N(1 + rng() % 9);
    for (u64 k = 1; k < ndigits; ++k) {
        N.mul_small(10);
        N.add_small(rng() % 10);
    }
    return N;
}

void run_bench(const Instance& ins, const std::vector<Method>& methods,
               const std::vector<BigIndex>& indices, std::ostream& payload) {
    const int d = ins.E.degy(), h = ins.E.degx();
    for (Method m : methods) {
        const BenchSetup setup = bench_prepare(ins, m);
        for (const BigIndex& N : indices) {
            kernels::reset_work();
            const auto t0 = std::chrono::steady_clock::now();
            (void)bench_query(ins, setup, N);
            const double query_ms = ms_since(t0);
            payload << method_name(setup.method) << ',' << ins.F.p << ',' << d << ',' << h << ','
                    << N.ndigits10() << ',' << setup.pre_ms << ',' << query_ms << ','
                    << kernels::work() << '\n';
        }
    }
}

// ---------------------------------------------------------------------------
// selfcheck

BiPoly random_instance(std::mt19937_64& rng, const PrimeField& F, std::size_t d, std::size_t h) {
    BiPoly E(F, h + 1, d + 1);
    for (std::size_t j = 0; j <= d; ++j)
        for (std::size_t i = 0; i <= h; ++i) E.ref(i, j) = rng() % F.p;
    E.ref(0, 0) = 0;
    E.ref(0, 1) = 1 + rng() % (F.p - 1);
    if (E.y_coeff(d).is_zero()) E.ref(rng() % (h + 1), d) = 1 + rng() % (F.p - 1);
    if (h > 0) {
        bool col = false;
        for (std::size_t j = 0; j <= d; ++j) col = col || E.at(h, j) != 0;
        if (!col) E.ref(h, 1 + rng() % d) = 1 + rng() % (F.p - 1);
    }
    E.trim();
    return E;
}

int run_selfcheck(u64 seed, std::ostream& payload, std::ostream& err) {
    constexpr std::size_t kInstances = 200;
    constexpr std::size_t kOracleTerms = 48;
    constexpr u64 kIndexMax = 3000;
    const u64 primes[] = {2, 3, 5, 7, 11, 13};

    std::mt19937_64 rng(seed);
    std::size_t failures = 0, mahler_checked = 0;
    for (std::size_t inst = 0; inst < kInstances; ++inst) {
        const PrimeField F(primes[rng() % 6]);
        const std::size_t d = 2 + rng() % 3;
        const std::size_t h = rng() % 4;
        const BiPoly E = random_instance(rng, F, d, h);
        check_algebraic_input(E);

        bool ok = true;
        auto complain = [&](const std::string& what) {
            if (ok) {
                ++failures;
                err << "selfcheck: " << what << " on instance " << inst + 1 << " (p=" << F.p
                    << ", E = " << bipoly_to_string(E) << ")\n";
            }
            ok = false;
        };

        const SeriesPrefix newton = expand_newton(E, kOracleTerms);
        const SeriesPrefix direct = expand_undetermined(E, kOracleTerms);
        if (newton.prefix != direct.prefix) complain("series oracles disagree");

        const LinearRep slow = diagonal_precompute(E);
        const FastLinearRep fast = diagonal_fast_precompute(E);

        std::optional<MahlerPipeline> mp;
        const double est =
            double(d) * double(std::max<std::size_t>(h, 1)) * std::pow(double(F.p), double(d));
        if (est <= 4000) {
            MahlerPipeline candidate = mahler_precompute(E);
            if (mahler_predicted_ops(candidate, 4) <= 1e7) mp.emplace(std::move(candidate));
        }
        if (mp) ++mahler_checked;

        std::vector<BigIndex> indices;
        for (std::size_t n = 0; n < kOracleTerms; ++n) indices.push_back(BigIndex(n));
        for (int k = 0; k < 8; ++k) indices.push_back(BigIndex(rng() % (kIndexMax + 1)));

        for (const BigIndex& N : indices) {
            const u64 a = linrep_coeff(slow, N);
            const u64 b = linrep_coeff(fast, N);
            if (a != b) complain("dense and strip-based answers differ at N = " + N.to_string());
            if (N.fits_u64() && N.to_u64() < kOracleTerms &&
                a != newton.prefix.coeff(std::size_t(N.to_u64())))
                complain("digit-matrix answer differs from the series at N = " + N.to_string());
            if (mp && mahler_coeff(*mp, N) != a)
                complain("mahler answer differs at N = " + N.to_string());
        }
    }

    payload << "instances = " << kInstances << "\n";
    payload << "mahler-checked = " << mahler_checked << "\n";
    payload << "failures = " << failures << "\n";
    payload << "status = " << (failures ? "FAIL" : "ok") << "\n";
    return failures ? kExitCertificate : kExitOK;
}

// ---------------------------------------------------------------------------
// linrep

template <class Rep>
nlohmann::ordered_json rep_to_json(const Rep& lr) {
    nlohmann::ordered_json j;
    j["p"] = lr.F.p;
    j["dx"] = lr.dx;
    j["dy"] = lr.dy;
    j["L"] = lr.L;
    j["C"] = lr.C;
    nlohmann::ordered_json A = nlohmann::ordered_json::object();
    for (u64 r = 0; r < lr.F.p; ++r) {
        const std::vector<u64>& M = lr.matrix(r);
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k < lr.m; ++k)
            rows.push_back(std::vector<u64>(M.begin() + k * lr.m, M.begin() + (k + 1) * lr.m));
        A[std::to_string(r)] = std::move(rows);
    }
    j["A"] = std::move(A);
    return j;
}

std::string run_linrep(const Instance& ins, Method m) {
    if (ins.F.p > kLinrepPrimeMax)
        throw InvalidInput("linrep emits one digit matrix per residue; p is too large");
    nlohmann::ordered_json j;
    switch (resolve_auto(m, ins.F)) {
        case Method::diagonal:
            j = rep_to_json(diagonal_precompute(ins.E));
            break;
        case Method::diagonal_fast:
            j = rep_to_json(diagonal_fast_precompute(ins.E));
            break;
        default:
            throw InvalidInput("linrep requires a diagonal method (diagonal, diagonal-fast, auto)");
    }
    return j.dump() + "\n";
}

}  // namespace

Method parse_method(const std::string& name) {
    if (name == "naive") return Method::naive;
    if (name == "mahler") return Method::mahler;
    if (name == "diagonal") return Method::diagonal;
    if (name == "diagonal-fast") return Method::diagonal_fast;
    if (name == "auto") return Method::auto_pick;
    throw InvalidInput("unknown method '" + name +
                       "' (expected naive|mahler|diagonal|diagonal-fast|auto)");
}

Method resolve_auto(Method m, const PrimeField& F) {
    if (m != Method::auto_pick) return m;
    return F.p > 64 ? Method::diagonal_fast : Method::diagonal;
}

std::string poly_to_string(const UniPoly& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (std::size_t k = 0; k < f.c.size(); ++k)
        if (f.c[k]) join_term(s, term_string(f.c[k], k, 0));
    return s;
}

std::string bipoly_to_string(const BiPoly& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (std::size_t j = 0; j < f.ny; ++j)
        for (std::size_t i = 0; i < f.nx; ++i)
            if (f.at(i, j)) join_term(s, term_string(f.at(i, j), i, j));
    return s;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"N-th coefficient of an algebraic power series over F_p"};
    app.require_subcommand(1);

    u64 p = 0;
    std::string poly_text, index_text, method_name_ = "auto", outpath;
    u64 expand_order = 0;
    u64 seed = 0;
    std::vector<u64> bench_primes, bench_ndigits;
    std::vector<std::string> bench_indices, bench_methods;

    const char* method_help = "naive|mahler|diagonal|diagonal-fast|auto (default auto)";

    CLI::App* c_coeff = app.add_subcommand("coeff", "print the N-th series coefficient");
    c_coeff->add_option("-p", p, "prime modulus")->required();
    c_coeff->add_option("-E", poly_text, "defining polynomial E(x,y)")->required();
    c_coeff->add_option("-N", index_text, "coefficient index: decimal, 10^k, or a*10^k")
        ->required();
    c_coeff->add_option("--method", method_name_, method_help);
    c_coeff->add_option("--out", outpath, "write the payload to this file");

    CLI::App* c_expand = app.add_subcommand("expand", "print the series truncated to x^n");
    c_expand->add_option("-p", p, "prime modulus")->required();
    c_expand->add_option("-E", poly_text, "defining polynomial E(x,y)")->required();
    c_expand->add_option("-n", expand_order, "number of coefficients f_0..f_{n-1}")->required();
    c_expand->add_option("--out", outpath, "write the payload to this file");

    CLI::App* c_mahler = app.add_subcommand("mahler-eq", "print the radix functional equation");
    c_mahler->add_option("-p", p, "prime modulus")->required();
    c_mahler->add_option("-E", poly_text, "defining polynomial E(x,y)")->required();
    c_mahler->add_option("--out", outpath, "write the payload to this file");

    CLI::App* c_furst = app.add_subcommand("furstenberg", "print the diagonal representation a/b");
    c_furst->add_option("-p", p, "prime modulus")->required();
    c_furst->add_option("-E", poly_text, "defining polynomial E(x,y)")->required();
    c_furst->add_option("--out", outpath, "write the payload to this file");

    CLI::App* c_linrep = app.add_subcommand("linrep", "emit the digit matrices as JSON");
    c_linrep->add_option("-p", p, "prime modulus")->required();
    c_linrep->add_option("-E", poly_text, "defining polynomial E(x,y)")->required();
    c_linrep->add_option("--method", method_name_, "diagonal|diagonal-fast|auto (default auto)");
    c_linrep->add_option("--out", outpath, "write the payload to this file");

    CLI::App* c_bench = app.add_subcommand("bench", "time precomputation and queries as CSV");
    c_bench->add_option("-p", bench_primes, "prime modulus (repeatable)")->required();
    c_bench->add_option("-E", poly_text, "defining polynomial E(x,y)")->required();
    c_bench->add_option("-n", bench_ndigits, "decimal digits of a generated index (repeatable)");
    c_bench->add_option("-N", bench_indices, "explicit index, overrides -n (repeatable)");
    c_bench->add_option("--method", bench_methods, "method to time (repeatable, default diagonal-fast)");
    c_bench->add_option("--seed", seed, "seed for the generated indices (default 0)");
    c_bench->add_option("--out", outpath, "write the payload to this file");

    CLI::App* c_self = app.add_subcommand("selfcheck", "cross-check all methods on random instances");
    c_self->add_option("--seed", seed, "seed for the random instances (default 0)");
    c_self->add_option("--out", outpath, "write the payload to this file");

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("nthcoeff");
        for (const std::string& a : args) argv.push_back(a.c_str());
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOK;
        }
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }

    try {
        std::ostringstream payload;
        int code = kExitOK;

        if (c_coeff->parsed()) {
            const Instance ins = make_instance(p, poly_text, err);
            const BigIndex N = parse_index(index_text);
            payload << coeff_by_method(ins, N, parse_method(method_name_)) << "\n";
        } else if (c_expand->parsed()) {
            if (expand_order > kExpandOrderMax)
                throw InvalidInput("expansion order limited to 10^6 coefficients");
            const Instance ins = make_instance(p, poly_text, err);
            const SeriesPrefix sp = expand_newton(ins.E, std::size_t(expand_order));
            payload << poly_to_string(sp.prefix) << "\n";
        } else if (c_mahler->parsed()) {
            const Instance ins = make_instance(p, poly_text, err);
            guard_mahler_size(ins.E);
            const MahlerEquation meq = algeq_to_mahler(ins.E);
            for (std::size_t k = 0; k <= meq.K; ++k)
                payload << "c_" << k << " = " << poly_to_string(meq.c[k]) << "\n";
        } else if (c_furst->parsed()) {
            const Instance ins = make_instance(p, poly_text, err);
            const DiagonalRep rep = furstenberg(ins.E);
            payload << "a = " << bipoly_to_string(rep.a) << "\n";
            payload << "b = " << bipoly_to_string(rep.b) << "\n";
            payload << "dx = " << rep.dx << "\n";
            payload << "dy = " << rep.dy << "\n";
        } else if (c_linrep->parsed()) {
            const Instance ins = make_instance(p, poly_text, err);
            payload << run_linrep(ins, parse_method(method_name_));
        } else if (c_bench->parsed()) {
            std::vector<Method> methods;
            if (bench_methods.empty()) bench_methods.push_back("diagonal-fast");
            for (const std::string& name : bench_methods) methods.push_back(parse_method(name));
            std::vector<BigIndex> indices;
            if (!bench_indices.empty()) {
                for (const std::string& s : bench_indices) indices.push_back(parse_index(s));
            } else {
                if (bench_ndigits.empty()) bench_ndigits.push_back(100);
                for (u64 nd : bench_ndigits) indices.push_back(random_index(seed, nd));
            }
            payload << "method,p,d,h,ndigits,pre_ms,query_ms,ops\n";
            payload << std::fixed << std::setprecision(3);
            for (u64 bp : bench_primes) {
                const Instance ins = make_instance(bp, poly_text, err);
                run_bench(ins, methods, indices, payload);
            }
        } else if (c_self->parsed()) {
            code = run_selfcheck(seed, payload, err);
        }

        deliver(payload.str(), outpath, out);
        return code;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const CertificateError& e) {
        err << "certificate failure: " << e.what() << "\n";
        return kExitCertificate;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace nth
