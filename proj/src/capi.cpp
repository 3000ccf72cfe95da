#include "hermitia/hermitia.h"

#include <new>
#include <string>

#include "hermitia/reports.hpp"

using namespace hermitia;

struct hm_session {
    int bits = 128;
    std::uint64_t seed = 0;
    std::string error;
    std::string result = "null";
};

namespace {

struct ArgumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

BigInt parse_big(const char* text) {
    if (!text) throw ArgumentError("missing integer");
    std::string t(text);
    size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size() || t.find_first_not_of("0123456789", i) != std::string::npos)
        throw ArgumentError("not an integer: '" + t + "'");
    return BigInt(t[0] == '+' ? t.substr(1) : t);
}

template <class F>
hm_status guarded(hm_session* s, F&& body) {
    if (!s) return HM_ERR_ARGUMENT;
    s->error.clear();
    s->result = "null";
    try {
        return body();
    } catch (const ArgumentError& e) {
        s->error = e.what();
        return HM_ERR_ARGUMENT;
    } catch (const PreconditionError& e) {
        s->error = e.what();
        return HM_ERR_PRECONDITION;
    } catch (const ConsistencyError& e) {
        s->error = e.what();
        return HM_ERR_CONSISTENCY;
    } catch (const std::exception& e) {
        s->error = e.what();
        return HM_ERR_INTERNAL;
    } catch (...) {
        s->error = "unknown exception";
        return HM_ERR_INTERNAL;
    }
}

hm_status store(hm_session* s, const Json& j) {
    s->result = j.dump();
    return HM_OK;
}

}  // namespace

extern "C" {

hm_session* hm_session_new(void) { return new (std::nothrow) hm_session(); }

void hm_session_free(hm_session* s) { delete s; }

hm_status hm_set_precision(hm_session* s, int bits) {
    return guarded(s, [&] {
        require(bits >= 64, "precision must be at least 64 bits (got " + std::to_string(bits) + ")");
        s->bits = bits;
        return HM_OK;
    });
}

hm_status hm_set_seed(hm_session* s, uint64_t seed) {
    if (!s) return HM_ERR_ARGUMENT;
    s->seed = seed;
    return HM_OK;
}

int hm_precision(const hm_session* s) { return s ? s->bits : 0; }

const char* hm_last_error(const hm_session* s) { return s ? s->error.c_str() : "null session"; }

const char* hm_result_json(const hm_session* s) { return s ? s->result.c_str() : "null"; }

hm_status hm_alpha(hm_session* s, int d, int k, const char* delta) {
    return guarded(s, [&] { return store(s, to_json(run_alpha(d, k, parse_big(delta)))); });
}

hm_status hm_theta(hm_session* s, int d, long delta, int sarg) {
    return guarded(s, [&] { return store(s, to_json(run_theta(d, delta, sarg))); });
}

hm_status hm_rcount(hm_session* s, int d, long delta, long n) {
    return guarded(s, [&] { return store(s, to_json(run_rcount(d, delta, n))); });
}

hm_status hm_lvalue(hm_session* s, int d, int sarg, long delta) {
    return guarded(s, [&] {
        std::optional<long> dl;
        if (delta > 0) dl = delta;
        return store(s, to_json(cohen_zagier(FieldSpec::get(d), sarg, dl, s->bits)));
    });
}

hm_status hm_bench(hm_session* s, int d, int sarg, const long* deltas, size_t count, int repeats) {
    return guarded(s, [&] {
        if (count && !deltas) throw ArgumentError("null delta list");
        require(count > 0, "empty delta list");
        require(repeats >= 1, "repeats must be positive");
        std::vector<long> ds(deltas, deltas + count);
        Json rows = Json::array();
        for (const auto& r : bench(FieldSpec::get(d), sarg, ds, s->bits, repeats)) rows.push_back(to_json(r));
        return store(s, rows);
    });
}

hm_status hm_hconst(hm_session* s, int d, int k, long delta, int trials) {
    return guarded(s, [&] {
        auto r = run_hconst(d, k, delta, trials, s->seed);
        store(s, to_json(r));
        if (r.in_scope && !r.pass()) {
            s->error = "H_{" + std::to_string(k) + "," + std::to_string(delta) + "} differs from alpha at " +
                       std::to_string(trials - r.equal) + " of " + std::to_string(trials) + " points";
            return HM_ERR_CONSISTENCY;
        }
        return HM_OK;
    });
}

hm_status hm_average(hm_session* s, int d, int k, long delta, int grid, long a_max) {
    return guarded(s, [&] { return store(s, to_json(run_average(d, k, delta, grid, a_max))); });
}

hm_status hm_cfrac(hm_session* s, int d, const char* re, const char* im, int steps, int float_path) {
    return guarded(s, [&] {
        if (!re || !im) throw ArgumentError("missing coordinate");
        require(steps >= 1, "steps must be positive");
        return store(s, to_json(run_cfrac(d, re, im, steps, float_path != 0, s->bits)));
    });
}

hm_status hm_dims(hm_session* s, int d, int kmin, int kmax, int odd_only) {
    return guarded(s, [&] {
        FieldSpec::get(d);
        require(kmin >= 1 && kmax >= kmin, "need 1 <= kmin <= kmax");
        Json rows = Json::array();
        for (const auto& r : dimension_table(d, kmin, kmax, odd_only != 0)) rows.push_back(to_json(r));
        return store(s, rows);
    });
}

hm_status hm_basis(hm_session* s, int d, int k) {
    return guarded(s, [&] {
        require(k >= 1, "k must be positive");
        return store(s, to_json(wkk(d, k, true)));
    });
}

hm_status hm_expandp(hm_session* s, int d, int k, const char* delta) {
    return guarded(s, [&] { return store(s, to_json(run_expandp(d, k, parse_big(delta)))); });
}

hm_status hm_selftest(hm_session* s) {
    return guarded(s, [&] {
        auto r = run_selftest();
        store(s, to_json(r));
        if (!r.pass()) {
            s->error = "selftest failed";
            return HM_ERR_CONSISTENCY;
        }
        return HM_OK;
    });
}

hm_status hm_is_norm(hm_session* s, int d, const char* delta, int* out) {
    return guarded(s, [&] {
        BigInt n = parse_big(delta);
        const auto& f = FieldSpec::get(d);
        auto w = norm_witness(n, f);
        if (out) *out = w ? 1 : 0;
        Json j = {{"d", d}, {"delta", n.get_str()}, {"norm", bool(w)}, {"witness", nullptr}};
        if (w) j["witness"] = to_json(*w);
        return store(s, j);
    });
}

}  // extern "C"
