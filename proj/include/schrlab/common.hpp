#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <cmath>
#include <complex>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lab {

using cplx = std::complex<double>;

struct Error : std::runtime_error {
    int code;
    Error(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

enum ErrCode {
    ERR_INVALID_ARG = 1,
    ERR_IO = 2,
    ERR_NUMERIC = 3,
    ERR_UNSUPPORTED = 4,
};

// ---- compensated accumulation ----------------------------------------------

struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double get() const { return s; }
};

struct KahanC {
    Kahan re, im;
    void add(cplx z) { re.add(z.real()); im.add(z.imag()); }
    cplx get() const { return {re.get(), im.get()}; }
};

// ---- deterministic RNG streams ----------------------------------------------

inline uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Self-contained generator so streams are reproducible across platforms and
// independent of std library implementation details.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed, uint64_t stream = 0) {
        uint64_t x = seed;
        state = splitmix64(x) ^ (0x632be59bd9b4e019ULL * (stream + 1));
        // warm up
        for (int i = 0; i < 4; i++) next();
    }
    uint64_t next() { return splitmix64(state); }
    double uniform() {  // [0,1)
        return double(next() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int64_t uniform_int(int64_t lo, int64_t hi) {  // inclusive range
        uint64_t span = uint64_t(hi - lo) + 1;
        return lo + int64_t(next() % span);
    }
};

// substream id for (seed, m, stream-kind) triples
inline uint64_t stream_id(uint64_t kind, uint64_t m) { return kind * 1000003ULL + m; }

// ---- thread pool ------------------------------------------------------------

int thread_count();  // from LAB_THREADS, default hardware_concurrency

// Deterministic parallel map-reduce: index space is split into fixed chunks,
// per-chunk results are combined in index order regardless of thread timing.
void parallel_chunks(int64_t count, const std::function<void(int64_t lo, int64_t hi, int chunk_idx)>& body,
                     int64_t chunk_hint = -1, int* n_chunks_out = nullptr);

template <typename T>
std::vector<T> parallel_map(int64_t count, const std::function<T(int64_t)>& fn) {
    std::vector<T> out(count);
    parallel_chunks(count, [&](int64_t lo, int64_t hi, int) {
        for (int64_t i = lo; i < hi; i++) out[i] = fn(i);
    });
    return out;
}

// ---- formatting -------------------------------------------------------------

inline std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string sha1_hex(const std::string& bytes);

}  // namespace lab
