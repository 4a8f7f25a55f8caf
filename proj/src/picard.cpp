#include "dpcodes/picard.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace dpc {

int64_t intersect(const DivClass& A, const DivClass& B) {
    if (A.rank() != B.rank()) throw std::invalid_argument("intersect: rank mismatch");
    int64_t s = A.a[0] * B.a[0];
    for (size_t i = 1; i < A.a.size(); ++i) s -= A.a[i] * B.a[i];
    return s;
}

DivClass canonical_class(int r) {
    DivClass k;
    k.a.assign(static_cast<size_t>(r) + 1, 1);
    k.a[0] = -3;
    return k;
}

DivClass add(const DivClass& A, const DivClass& B) {
    DivClass r = A;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += B.a[i];
    return r;
}

int64_t adjunction_genus(const DivClass& D, const DivClass& K) {
    int64_t v = intersect(D, add(D, K));
    if (v % 2 != 0) throw std::invalid_argument("adjunction: D.(D+K) is odd (malformed class)");
    return v / 2 + 1;
}

int64_t predicted_points(uint64_t q, const FrobAction& F) {
    return static_cast<int64_t>(q) * static_cast<int64_t>(q) +
           static_cast<int64_t>(q) * F.matrix.trace() + 1;
}

bool preserves_intersection(const IntMat& m) {
    int n = m.n;
    IntMat j = IntMat::identity(n);
    for (int i = 1; i < n; ++i) j.at(i, i) = -1;
    return m.transpose() * j * m == j;
}

bool fixes_canonical(const IntMat& m) {
    std::vector<int64_t> k(static_cast<size_t>(m.n), 1);
    k[0] = -3;
    return m.apply(k) == k;
}

std::vector<DivClass> orthogonal_basis(const std::vector<DivClass>& sub) {
    if (sub.empty()) throw std::invalid_argument("orthogonal_basis: empty input");
    size_t n = sub[0].rank();
    int target = static_cast<int>(n - sub.size());  // complement dimension
    auto orthogonal_to_all = [&](const DivClass& v, const std::vector<DivClass>& set) {
        for (const auto& s : set)
            if (intersect(v, s) != 0) return false;
        return true;
    };
    // candidates in canonical order: a0 ascending 0..3, then (a1..) lex
    // ascending in -3..3, first nonzero entry positive
    std::vector<DivClass> minus, all_found;
    auto scan = [&](int64_t self_target, const std::vector<DivClass>& extra) -> std::optional<DivClass> {
        std::vector<int64_t> a(n, 0);
        std::function<std::optional<DivClass>(size_t)> rec = [&](size_t pos) -> std::optional<DivClass> {
            if (pos == n) {
                DivClass v{a};
                bool nonzero = false, first_pos = false;
                for (int64_t x : a) {
                    if (x != 0) {
                        nonzero = true;
                        first_pos = x > 0;
                        break;
                    }
                }
                if (!nonzero || !first_pos) return std::nullopt;
                if (intersect(v, v) != self_target) return std::nullopt;
                if (!orthogonal_to_all(v, sub) || !orthogonal_to_all(v, extra)) return std::nullopt;
                return v;
            }
            int64_t lo = pos == 0 ? 0 : -3, hi = 3;
            for (int64_t x = lo; x <= hi; ++x) {
                a[pos] = x;
                if (auto r = rec(pos + 1)) return r;
            }
            a[pos] = 0;
            return std::nullopt;
        };
        return rec(0);
    };
    for (int i = 0; i < target - 1; ++i) {
        auto v = scan(-1, minus);
        if (!v) throw std::invalid_argument("orthogonal_basis: no (-1)-class found");
        minus.push_back(*v);
    }
    auto plus = scan(1, minus);
    if (!plus) throw std::invalid_argument("orthogonal_basis: no (+1)-class found");
    std::vector<DivClass> out{*plus};
    out.insert(out.end(), minus.begin(), minus.end());
    return out;
}

Bounds bounds(uint64_t q) {
    if (q < 2) throw std::invalid_argument("q must be >= 2");
    return Bounds{static_cast<int64_t>(q) + 1 + static_cast<int64_t>(isqrt_u64(4 * q)), 2};
}

bool griesmer_feasible(uint64_t q, int64_t n, int64_t k, int64_t d) {
    int64_t sum = 0;
    int64_t qi = 1;
    for (int64_t i = 0; i < k; ++i) {
        sum += (d + qi - 1) / qi;
        if (qi <= d) qi *= static_cast<int64_t>(q);  // once qi > d every term is 1
    }
    return sum <= n;
}

// ---------------------------------------------------------------- tables

namespace {

// reflection in a root of self-intersection -2, acting on E-basis coordinates
IntMat reflection(const std::vector<int64_t>& root) {
    int n = static_cast<int>(root.size());
    IntMat m = IntMat::identity(n);
    // s(v) = v + <v, r> r  with <,> the intersection pairing
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int64_t jr = (j == 0 ? root[j] : -root[j]);
            m.at(i, j) += root[i] * jr;
        }
    return m;
}

IntMat weyl_word(int rank, const std::vector<int>& word) {
    // roots a1 = E0-E1-E2-E3, a_i = E_{i-1} - E_i for i >= 2
    std::vector<std::vector<int64_t>> roots;
    {
        std::vector<int64_t> a1(rank, 0);
        a1[0] = 1;
        a1[1] = a1[2] = a1[3] = -1;
        roots.push_back(a1);
        for (int i = 2; i < rank; ++i) {
            std::vector<int64_t> ai(rank, 0);
            ai[i - 1] = 1;
            ai[i] = -1;
            roots.push_back(ai);
        }
    }
    IntMat m = IntMat::identity(rank);
    for (int s : word) m = m * reflection(roots[s - 1]);
    return m;
}

SurfaceType make_weyl_type(int degree, std::string label, std::string weyl_class,
                           std::string eigen, int64_t trace, int rank_pic,
                           std::vector<int> cyclo, const std::vector<int>& word) {
    int lat_rank = degree == 6 ? 4 : 5;
    SurfaceType t;
    t.degree = degree;
    t.label = std::move(label);
    t.weyl_class = std::move(weyl_class);
    t.eigenvalues = std::move(eigen);
    t.trace = trace;
    t.picard_rank = rank_pic;
    t.cyclotomic_factors = std::move(cyclo);
    t.action = FrobAction{weyl_word(lat_rank, word), LatticeBasis::E};
    if (t.action.matrix.trace() != trace) throw std::logic_error("type table: trace mismatch");
    return t;
}

std::vector<std::pair<int, int>> parse_pencil(const std::string& pencil) {
    std::vector<std::pair<int, int>> blocks;  // (degree, epsilon)
    size_t i = 0;
    while (i < pencil.size()) {
        size_t open = pencil.find('[', i);
        size_t close = pencil.find(']', open);
        if (open == std::string::npos || close == std::string::npos)
            throw std::invalid_argument("bad pencil string");
        int d = std::stoi(pencil.substr(i, open - i));
        int e = std::stoi(pencil.substr(open + 1, close - open - 1));
        blocks.emplace_back(d, e);
        i = close + 1;
    }
    return blocks;
}

SurfaceType make_dp4_type(std::string label, std::string pencil, std::string eigen, int64_t trace,
                          std::vector<int> cyclo) {
    SurfaceType t;
    t.degree = 4;
    t.label = std::move(label);
    t.pencil = pencil;
    t.eigenvalues = std::move(eigen);
    t.trace = trace;
    t.picard_rank = 1;
    t.cyclotomic_factors = std::move(cyclo);
    t.action = FrobAction{dp4_action_from_pencil(pencil), LatticeBasis::E};
    if (t.action.matrix.trace() != trace) throw std::logic_error("type table: trace mismatch");
    return t;
}

std::vector<SurfaceType> build_table(int degree) {
    std::vector<SurfaceType> v;
    if (degree == 6) {
        v.push_back(make_weyl_type(6, "6_1", "{Id}", "1,1,1,1", 4, 4, {1, 1, 1, 1}, {}));
        v.push_back(make_weyl_type(6, "6_2", "{s1}", "1,1,1,-1", 2, 3, {1, 1, 1, 2}, {1}));
        v.push_back(make_weyl_type(6, "6_3", "{s2,s3,s2s3s2}", "1,1,1,-1", 2, 3, {1, 1, 1, 2}, {2}));
        v.push_back(make_weyl_type(6, "6_4", "{s2s3,s3s2}", "1,1,j,jbar", 1, 2, {1, 1, 3}, {2, 3}));
        v.push_back(make_weyl_type(6, "6_5", "{s1s2,s1s3,s1s2s3s2}", "1,1,-1,-1", 0, 2, {1, 1, 2, 2},
                                   {1, 2}));
        v.push_back(make_weyl_type(6, "6_6", "{s1s2s3,s1s3s2}", "1,-1,j,jbar", -1, 1, {1, 2, 3},
                                   {1, 2, 3}));
    } else if (degree == 5) {
        v.push_back(make_weyl_type(5, "5_1", "{1,1,1,1,1}", "1,1,1,1,1", 5, 5, {1, 1, 1, 1, 1}, {}));
        v.push_back(make_weyl_type(5, "5_2", "{2,1,1,1}", "1,1,1,1,-1", 3, 4, {1, 1, 1, 1, 2}, {2}));
        v.push_back(make_weyl_type(5, "5_3", "{3,1,1}", "1,1,1,j,jbar", 2, 3, {1, 1, 1, 3}, {2, 3}));
        v.push_back(make_weyl_type(5, "5_4", "{2,2,1}", "1,1,1,-1,-1", 1, 3, {1, 1, 1, 2, 2}, {2, 4}));
        v.push_back(make_weyl_type(5, "5_5", "{3,2}", "1,1,-1,j,jbar", 0, 2, {1, 1, 2, 3}, {2, 3, 1}));
        v.push_back(make_weyl_type(5, "5_6", "{4,1}", "1,1,-1,i,-i", 1, 2, {1, 1, 2, 4}, {2, 3, 4}));
        v.push_back(make_weyl_type(5, "5_7", "{5}", "1,z5,z5^2,z5^3,z5^4", 0, 1, {1, 5}, {2, 3, 4, 1}));
    } else if (degree == 4) {
        v.push_back(make_dp4_type("4_1", "2[-1]1[-1]1[-1]1[-1]", "1,-1,-1,-1,i,-i", -2,
                                  {1, 2, 2, 2, 4}));
        v.push_back(make_dp4_type("4_2", "4[-1]1[-1]", "1,-1,z8,z8^3,z8^5,z8^7", 0, {1, 2, 8}));
        v.push_back(make_dp4_type("4_3", "3[-1]2[-1]", "1,-1,i,-i,-j,-j^2", 1, {1, 2, 4, 6}));
    } else {
        throw std::invalid_argument("no type table for this degree");
    }
    return v;
}

std::mutex table_mutex;

}  // namespace

IntMat dp4_action_from_pencil(const std::string& pencil) {
    auto blocks = parse_pencil(pencil);
    int total = 0;
    for (auto& [d, e] : blocks) total += d;
    if (total != 5) throw std::invalid_argument("pencil degrees must sum to 5");
    // sigma on the ten conic classes C_i = E0 - E_i, C'_i = -K - C_i;
    // sigma(C_i) expressed as (c, k): c*C_target + k*(-K)
    struct Img {
        int target;
        bool primed;
    };
    std::vector<Img> img(6);  // 1-based conic index
    int base = 1;
    for (auto& [d, e] : blocks) {
        for (int j = 0; j < d; ++j) {
            int idx = base + j;
            if (j + 1 < d)
                img[idx] = {base + j + 1, false};
            else
                img[idx] = {base, e != 1};
        }
        base += d;
    }
    // sigma(E0) = (K + sum sigma(C_i)) / 2, sigma(E_i) = sigma(E0) - sigma(C_i)
    auto conic = [&](int i) {
        std::vector<int64_t> c(6, 0);
        c[0] = 1;
        c[i] = -1;
        return c;
    };
    std::vector<int64_t> K(6, 1);
    K[0] = -3;
    auto img_conic = [&](int i) {
        std::vector<int64_t> v = conic(img[i].target);
        if (img[i].primed) {  // -K - C_target
            for (int j = 0; j < 6; ++j) v[j] = -K[j] - v[j];
        }
        return v;
    };
    std::vector<int64_t> sum(6, 0);
    for (int i = 1; i <= 5; ++i) {
        auto v = img_conic(i);
        for (int j = 0; j < 6; ++j) sum[j] += v[j];
    }
    std::vector<int64_t> sigmaE0(6);
    for (int j = 0; j < 6; ++j) {
        int64_t num = K[j] + sum[j];
        if (num % 2 != 0) throw std::logic_error("dp4 action: non-integral image");
        sigmaE0[j] = num / 2;
    }
    IntMat m = IntMat::identity(6);
    for (int j = 0; j < 6; ++j) m.at(j, 0) = sigmaE0[j];
    for (int i = 1; i <= 5; ++i) {
        auto v = img_conic(i);
        for (int j = 0; j < 6; ++j) m.at(j, i) = sigmaE0[j] - v[j];
    }
    return m;
}

const std::vector<SurfaceType>& type_table(int degree) {
    static std::map<int, std::vector<SurfaceType>> cache;
    std::lock_guard<std::mutex> lk(table_mutex);
    auto it = cache.find(degree);
    if (it == cache.end()) it = cache.emplace(degree, build_table(degree)).first;
    return it->second;
}

const SurfaceType& type_by_label(const std::string& label) {
    int degree = label[0] - '0';
    for (const auto& t : type_table(degree))
        if (t.label == label) return t;
    throw std::invalid_argument("unknown surface type label: " + label);
}

FrobAction dp6_frobenius_printed() {
    return FrobAction{IntMat::from_rows({{2, 1, 1, 1}, {-1, -1, -1, 0}, {-1, 0, -1, -1},
                                         {-1, -1, 0, -1}}),
                      LatticeBasis::F};
}

FrobAction dp5_frobenius_printed() {
    return FrobAction{IntMat::from_rows({{2, 1, 1, 1, 0},
                                         {0, 0, 0, 0, 1},
                                         {-1, 0, -1, -1, 0},
                                         {-1, -1, 0, -1, 0},
                                         {-1, -1, -1, 0, 0}}),
                      LatticeBasis::F};
}

CodeParams expected_parameters(const SurfaceType& type, uint64_t q) {
    int64_t qq = static_cast<int64_t>(q);
    int64_t two_sqrt = static_cast<int64_t>(isqrt_u64(4 * q));
    if (type.label == "6_6") {
        if (q < 4)
            throw std::invalid_argument("degree-6 code needs q >= 4 (evaluation map injectivity)");
        return {qq * qq - qq + 1, 7, qq * qq - 2 * qq - two_sqrt};
    }
    if (type.label == "5_7") {
        if (q < 3)
            throw std::invalid_argument("degree-5 code needs q >= 3 (evaluation map injectivity)");
        return {qq * qq + 1, 6, qq * qq - qq - two_sqrt};
    }
    if (type.label == "4_1") {
        if (q <= 3)
            throw std::invalid_argument("type 4_1 does not exist over F_3 (not enough non-squares)");
        return {qq * qq - 2 * qq + 1, 5, qq * qq - 3 * qq - two_sqrt};
    }
    if (type.label == "4_2") {
        if (q < 3) throw std::invalid_argument("type 4_2 needs q >= 3");
        return {qq * qq + 1, 5, qq * qq - qq - two_sqrt};
    }
    if (type.label == "4_3") {
        if (q < 3) throw std::invalid_argument("type 4_3 needs q >= 3");
        return {qq * qq + qq + 1, 5, qq * qq - two_sqrt};
    }
    throw std::invalid_argument("expected_parameters: not a rank-one type");
}

CodeParams expected_parameters(const std::string& label, uint64_t q) {
    return expected_parameters(type_by_label(label), q);
}

}  // namespace dpc
