#include "schrlab/common.hpp"

#include <atomic>
#include <cstdlib>

namespace lab {

int thread_count() {
    static int cached = [] {
        if (const char* env = std::getenv("LAB_THREADS")) {
            int v = std::atoi(env);
            if (v >= 1) return v;
        }
        unsigned hc = std::thread::hardware_concurrency();
        return hc == 0 ? 1 : int(hc);
    }();
    return cached;
}

void parallel_chunks(int64_t count, const std::function<void(int64_t, int64_t, int)>& body,
                     int64_t chunk_hint, int* n_chunks_out) {
    if (count <= 0) {
        if (n_chunks_out) *n_chunks_out = 0;
        return;
    }
    int nt = thread_count();
    int64_t chunk = chunk_hint > 0 ? chunk_hint : std::max<int64_t>(1, count / (4 * nt));
    int n_chunks = int((count + chunk - 1) / chunk);
    if (n_chunks_out) *n_chunks_out = n_chunks;
    if (nt == 1 || n_chunks == 1) {
        for (int c = 0; c < n_chunks; c++)
            body(int64_t(c) * chunk, std::min<int64_t>(count, int64_t(c + 1) * chunk), c);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            int c = next.fetch_add(1);
            if (c >= n_chunks) break;
            try {
                body(int64_t(c) * chunk, std::min<int64_t>(count, int64_t(c + 1) * chunk), c);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
                break;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < std::min(nt, n_chunks); i++) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

std::string sha1_hex(const std::string& bytes) {
    uint32_t h[5] = {0x67452301u, 0xEFCDAB89u, 0x98BADCFEu, 0x10325476u, 0xC3D2E1F0u};
    uint64_t ml = uint64_t(bytes.size()) * 8;
    std::string msg = bytes;
    msg.push_back(char(0x80));
    while (msg.size() % 64 != 56) msg.push_back('\0');
    for (int i = 7; i >= 0; i--) msg.push_back(char((ml >> (8 * i)) & 0xff));
    auto rol = [](uint32_t x, int s) { return (x << s) | (x >> (32 - s)); };
    for (size_t off = 0; off < msg.size(); off += 64) {
        uint32_t w[80];
        for (int i = 0; i < 16; i++) {
            w[i] = (uint32_t(uint8_t(msg[off + 4 * i])) << 24) |
                   (uint32_t(uint8_t(msg[off + 4 * i + 1])) << 16) |
                   (uint32_t(uint8_t(msg[off + 4 * i + 2])) << 8) |
                   uint32_t(uint8_t(msg[off + 4 * i + 3]));
        }
        for (int i = 16; i < 80; i++) w[i] = rol(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
        uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4];
        for (int i = 0; i < 80; i++) {
            uint32_t f, k;
            if (i < 20) {
                f = (b & c) | ((~b) & d);
                k = 0x5A827999u;
            } else if (i < 40) {
                f = b ^ c ^ d;
                k = 0x6ED9EBA1u;
            } else if (i < 60) {
                f = (b & c) | (b & d) | (c & d);
                k = 0x8F1BBCDCu;
            } else {
                f = b ^ c ^ d;
                k = 0xCA62C1D6u;
            }
            uint32_t tmp = rol(a, 5) + f + e + k + w[i];
            e = d;
            d = c;
            c = rol(b, 30);
            b = a;
            a = tmp;
        }
        h[0] += a;
        h[1] += b;
        h[2] += c;
        h[3] += d;
        h[4] += e;
    }
    char out[41];
    std::snprintf(out, sizeof out, "%08x%08x%08x%08x%08x", h[0], h[1], h[2], h[3], h[4]);
    return out;
}

}  // namespace lab
