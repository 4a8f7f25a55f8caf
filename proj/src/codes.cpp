#include "dpcodes/codes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace dpc {

LinearCode LinearCode::from_rows(const FieldCtxPtr& ctx,
                                 const std::vector<std::vector<FieldElem>>& rows,
                                 std::string provenance) {
    LinearCode c;
    c.ctx = ctx;
    c.k = rows.size();
    c.n = rows.empty() ? 0 : rows[0].size();
    c.provenance = std::move(provenance);
    for (const auto& r : rows) {
        if (r.size() != c.n) throw std::invalid_argument("ragged generator rows");
        c.gen.insert(c.gen.end(), r.begin(), r.end());
    }
    return c;
}

LinearCode LinearCode::from_int_rows(const FieldCtxPtr& ctx,
                                     const std::vector<std::vector<int64_t>>& rows,
                                     std::string provenance) {
    std::vector<std::vector<FieldElem>> r;
    for (const auto& row : rows) {
        std::vector<FieldElem> fr;
        for (int64_t v : row) fr.push_back(fe_from_int(ctx, v));
        r.push_back(std::move(fr));
    }
    return from_rows(ctx, r, std::move(provenance));
}

std::vector<FieldElem> LinearCode::column(size_t j) const {
    std::vector<FieldElem> c;
    c.reserve(k);
    for (size_t i = 0; i < k; ++i) c.push_back(at(i, j));
    return c;
}

ReducedCode reduce(const LinearCode& code) {
    if (code.k == 0 || code.n == 0) throw std::invalid_argument("reduce: empty generator matrix");
    bool all_zero = std::all_of(code.gen.begin(), code.gen.end(),
                                [](const FieldElem& x) { return x.is_zero(); });
    if (all_zero) throw std::invalid_argument("reduce: zero matrix");
    Mat m(code.ctx, code.k, code.n);
    for (size_t i = 0; i < code.k; ++i)
        for (size_t j = 0; j < code.n; ++j) m.at(i, j) = code.at(i, j);
    auto pivots = m.rref();
    ReducedCode r;
    r.dimension = pivots.size();
    r.pivots = pivots;
    std::vector<std::vector<FieldElem>> rows;
    for (size_t i = 0; i < r.dimension; ++i) {
        std::vector<FieldElem> row;
        for (size_t j = 0; j < code.n; ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    r.rref = LinearCode::from_rows(code.ctx, rows, code.provenance);
    return r;
}

// ------------------------------------------------------ weight enumeration

namespace {

// Small-field tables: elements indexed by canonical rank.
struct FieldTables {
    uint32_t q;
    std::vector<uint8_t> add;  // q*q
    std::vector<uint8_t> mul;  // q*q
    std::vector<uint8_t> sub;  // q*q
};

FieldTables build_tables(const FieldCtxPtr& ctx) {
    if (ctx->size > 64) throw guard_error("field too large for table-based enumeration");
    uint32_t q = static_cast<uint32_t>(ctx->size);
    FieldTables t;
    t.q = q;
    t.add.resize(q * q);
    t.mul.resize(q * q);
    t.sub.resize(q * q);
    std::vector<FieldElem> elems;
    for (uint32_t i = 0; i < q; ++i) elems.push_back(fe_from_rank(ctx, i));
    for (uint32_t i = 0; i < q; ++i)
        for (uint32_t j = 0; j < q; ++j) {
            t.add[i * q + j] = static_cast<uint8_t>((elems[i] + elems[j]).rank());
            t.mul[i * q + j] = static_cast<uint8_t>((elems[i] * elems[j]).rank());
            t.sub[i * q + j] = static_cast<uint8_t>((elems[i] - elems[j]).rank());
        }
    return t;
}

// Enumerates one projective representative per nonzero codeword class
// (first nonzero message digit fixed to 1) and reports each weight.
// The generator must have independent rows.
void enumerate_weights(const LinearCode& gen, int workers,
                       const std::function<void(int64_t)>& on_weight) {
    const auto& ctx = gen.ctx;
    size_t k = gen.k, n = gen.n;
    uint64_t q = ctx->size;
    // guard: number of projective messages
    double classes = 0;
    for (size_t j = 0; j < k; ++j) classes += std::pow(static_cast<double>(q), static_cast<double>(k - 1 - j));
    if (classes > 1e9) throw guard_error("codeword enumeration guard exceeded");

    FieldTables t = build_tables(ctx);
    // scaled rows: srow[i][s][c] = s * G[i][c]
    std::vector<std::vector<std::vector<uint8_t>>> srow(k);
    for (size_t i = 0; i < k; ++i) {
        srow[i].assign(q, std::vector<uint8_t>(n));
        for (uint64_t s = 0; s < q; ++s)
            for (size_t c = 0; c < n; ++c)
                srow[i][s][c] = t.mul[s * q + gen.at(i, c).rank()];
    }

    auto run_block = [&](size_t lead, const std::function<void(int64_t)>& sink) {
        // one representative per projective class: the leading digit is
        // pinned to the rank-1 element (any fixed nonzero value works,
        // weights are scale-invariant), later digits run over the field
        size_t free_digits = k - 1 - lead;
        std::vector<uint8_t> digits(free_digits, 0);
        std::vector<uint8_t> cw(n);
        for (size_t c = 0; c < n; ++c) cw[c] = srow[lead][1][c];
        uint64_t total = 1;
        for (size_t i = 0; i < free_digits; ++i) total *= q;
        for (uint64_t step = 0; step < total; ++step) {
            int64_t w = 0;
            for (size_t c = 0; c < n; ++c) w += cw[c] != 0;
            sink(w);
            if (step + 1 == total) break;
            // odometer increment at the last digit; propagate carries,
            // applying each digit delta to the running codeword
            size_t pos = free_digits;
            while (pos > 0) {
                --pos;
                uint8_t old = digits[pos];
                uint8_t next = static_cast<uint8_t>(static_cast<uint64_t>(old) + 1 < q ? old + 1 : 0);
                digits[pos] = next;
                uint8_t delta = t.sub[next * q + old];
                const auto& row = srow[lead + 1 + pos][delta];
                for (size_t c = 0; c < n; ++c) cw[c] = t.add[cw[c] * q + row[c]];
                if (next != 0) break;
            }
        }
    };

    if (workers <= 1 || k == 1) {
        for (size_t lead = 0; lead < k; ++lead) run_block(lead, on_weight);
        return;
    }
    // split by leading position; collect per-thread then merge
    std::vector<std::vector<int64_t>> results(k);
    std::vector<std::thread> threads;
    std::atomic<size_t> next_lead{0};
    size_t nthreads = std::min<size_t>(workers, k);
    for (size_t ti = 0; ti < nthreads; ++ti)
        threads.emplace_back([&]() {
            while (true) {
                size_t lead = next_lead.fetch_add(1);
                if (lead >= k) break;
                run_block(lead, [&](int64_t w) { results[lead].push_back(w); });
            }
        });
    for (auto& th : threads) th.join();
    for (auto& rv : results)
        for (int64_t w : rv) on_weight(w);
}

}  // namespace

int64_t min_distance(const LinearCode& code, int workers) {
    ReducedCode r = reduce(code);
    int64_t best = static_cast<int64_t>(r.rref.n) + 1;
    enumerate_weights(r.rref, workers, [&](int64_t w) {
        if (w > 0 && w < best) best = w;
    });
    return best;
}

std::map<int64_t, int64_t> weight_distribution(const LinearCode& code, int workers) {
    ReducedCode r = reduce(code);
    std::map<int64_t, int64_t> dist;
    enumerate_weights(r.rref, workers, [&](int64_t w) { ++dist[w]; });
    return dist;
}

LinearCode puncture(const LinearCode& code, const std::vector<size_t>& positions) {
    std::vector<bool> drop(code.n, false);
    for (size_t p : positions) {
        if (p >= code.n) throw std::invalid_argument("puncture: position out of range");
        drop[p] = true;
    }
    size_t kept = 0;
    for (size_t j = 0; j < code.n; ++j) kept += !drop[j];
    if (kept == 0) throw std::invalid_argument("puncture: all columns removed");
    std::vector<std::vector<FieldElem>> rows(code.k);
    for (size_t i = 0; i < code.k; ++i)
        for (size_t j = 0; j < code.n; ++j)
            if (!drop[j]) rows[i].push_back(code.at(i, j));
    return LinearCode::from_rows(code.ctx, rows,
                                 code.provenance + "; punctured " + std::to_string(positions.size()) +
                                     " columns");
}

// ------------------------------------------------------ monomial maps

MonomialMap MonomialMap::identity_map(const FieldCtxPtr& ctx, size_t n) {
    MonomialMap m;
    m.perm.resize(n);
    for (size_t i = 0; i < n; ++i) m.perm[i] = i;
    m.scales.assign(n, fe_one(ctx));
    return m;
}

bool MonomialMap::is_identity() const {
    for (size_t i = 0; i < perm.size(); ++i)
        if (perm[i] != i || !scales[i].is_one()) return false;
    return true;
}

MonomialMap compose(const MonomialMap& a, const MonomialMap& b) {
    // (a o b)(c)_j = a.scales[j] * (b applied c)_{a.perm[j]}
    MonomialMap r;
    size_t n = a.perm.size();
    if (b.perm.size() != n) throw std::invalid_argument("compose: size mismatch");
    r.perm.resize(n);
    r.scales.reserve(n);
    for (size_t j = 0; j < n; ++j) {
        r.perm[j] = b.perm[a.perm[j]];
        r.scales.push_back(a.scales[j] * b.scales[a.perm[j]]);
    }
    return r;
}

MonomialMap global_scalar_map(const FieldCtxPtr& ctx, size_t n, const FieldElem& s) {
    if (s.is_zero()) throw std::invalid_argument("scalar map must be nonzero");
    MonomialMap m = MonomialMap::identity_map(ctx, n);
    m.scales.assign(n, s);
    return m;
}

bool is_automorphism(const LinearCode& code, const MonomialMap& m) {
    if (m.perm.size() != code.n) throw std::invalid_argument("monomial map size mismatch");
    for (const auto& s : m.scales)
        if (s.is_zero()) throw std::invalid_argument("monomial map has zero scale");
    ReducedCode base = reduce(code);
    std::vector<std::vector<FieldElem>> rows;
    for (size_t i = 0; i < base.rref.k; ++i) {
        std::vector<FieldElem> row;
        for (size_t j = 0; j < code.n; ++j) row.push_back(m.scales[j] * base.rref.at(i, m.perm[j]));
        rows.push_back(std::move(row));
    }
    LinearCode mapped = LinearCode::from_rows(code.ctx, rows);
    ReducedCode mr = reduce(mapped);
    if (mr.dimension != base.dimension) return false;
    return mr.rref.gen == base.rref.gen;  // RREF is canonical for the row space
}

std::optional<int64_t> dp6_code_automorphism_order(uint64_t q) {
    switch (q) {
        case 4: return 234;
        case 5: return 504;
        case 7: return 1548;
        default: return std::nullopt;
    }
}

int64_t map_order(const MonomialMap& m) {
    MonomialMap acc = m;
    int64_t ord = 1;
    while (!acc.is_identity()) {
        acc = compose(acc, m);
        ++ord;
        if (ord > 1000000) throw std::logic_error("map_order: runaway composition");
    }
    return ord;
}

// ------------------------------------------------- best-known snapshot

BestKnownTable load_best_known(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open best-known snapshot: " + path);
    nlohmann::json j;
    in >> j;
    BestKnownTable t;
    for (const auto& e : j.at("entries"))
        t.entries[{e.at("n").get<int64_t>(), e.at("k").get<int64_t>(), e.at("q").get<uint64_t>()}] =
            e.at("best_d").get<int64_t>();
    return t;
}

BestKnownVerdict compare_best_known(int64_t n, int64_t k, uint64_t q, int64_t computed_d,
                                    const BestKnownTable& table) {
    auto it = table.entries.find({n, k, q});
    if (it == table.entries.end()) return {std::nullopt, "no reference data"};
    int64_t best = it->second;
    if (computed_d > best) return {best, "beats"};
    if (computed_d == best) return {best, "attains"};
    return {best, "below"};
}

// ------------------------------------------------- output formats

std::string emit_matrix_text(const LinearCode& code) {
    if (!code.ctx->prime_field())
        throw std::invalid_argument("digit-row output is for prime fields; use JSON");
    std::ostringstream s;
    for (size_t i = 0; i < code.k; ++i) {
        for (size_t j = 0; j < code.n; ++j) s << code.at(i, j).coeffs()[0];
        s << '\n';
    }
    return s.str();
}

std::string emit_matrix_json(const LinearCode& code) {
    nlohmann::json j;
    j["p"] = code.ctx->p;
    j["m"] = code.ctx->m;
    j["modulus"] = code.ctx->modulus;
    j["k"] = code.k;
    j["n"] = code.n;
    j["provenance"] = code.provenance;
    auto& rows = j["rows"] = nlohmann::json::array();
    for (size_t i = 0; i < code.k; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (size_t jj = 0; jj < code.n; ++jj) row.push_back(code.at(i, jj).coeffs());
        rows.push_back(std::move(row));
    }
    return j.dump(2);
}

}  // namespace dpc
