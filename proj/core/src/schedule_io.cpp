#include "ldpcenc/schedule_io.hpp"

#include "ldpcenc/errors.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>

namespace ldpcenc {

namespace {

constexpr std::array<char, 8> kMagic = {'L', 'D', 'P', 'C', 'S', 'C', 'H', '\0'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff), char(v >> 24)};
    out.write(b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    put_u32(out, std::uint32_t(v & 0xffffffffu));
    put_u32(out, std::uint32_t(v >> 32));
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw FormatError("schedule: truncated file");
    return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
           std::uint32_t(b[3]) << 24;
}

std::uint64_t get_u64(std::istream& in) {
    std::uint64_t lo = get_u32(in);
    std::uint64_t hi = get_u32(in);
    return lo | hi << 32;
}

void put_list(std::ostream& out, const std::vector<std::uint32_t>& v) {
    put_u32(out, std::uint32_t(v.size()));
    for (std::uint32_t x : v) put_u32(out, x);
}

std::vector<std::uint32_t> get_list(std::istream& in) {
    std::uint32_t n = get_u32(in);
    std::vector<std::uint32_t> v(n);
    for (auto& x : v) x = get_u32(in);
    return v;
}

} // namespace

std::uint64_t matrix_digest(const ParityCheckRows& h) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    auto mix = [&hash](std::uint32_t v) {
        for (int i = 0; i < 4; ++i) {
            hash ^= (v >> (8 * i)) & 0xff;
            hash *= 0x100000001b3ull;
        }
    };
    mix(std::uint32_t(h.n_bits));
    mix(std::uint32_t(h.rows.size()));
    for (const auto& row : h.rows) {
        std::vector<bit_index> sorted = row;
        std::sort(sorted.begin(), sorted.end());
        mix(std::uint32_t(sorted.size()));
        for (bit_index b : sorted) mix(b);
    }
    return hash;
}

void save_schedule(std::ostream& out, const Schedule& s) {
    out.write(kMagic.data(), kMagic.size());
    put_u32(out, kVersion);
    put_u64(out, s.graph_digest);
    out.put(char(s.mode));
    put_u64(out, s.n_work_bits);
    put_u64(out, s.n_out_bits);
    put_u64(out, s.n_slots);
    put_u64(out, s.xor_budget);
    put_list(out, s.info_positions);
    put_list(out, s.clone_origin);
    put_u32(out, std::uint32_t(s.steps.size()));
    for (const Step& st : s.steps) {
        out.put(char(st.op));
        out.put(char(st.tag));
        put_u32(out, st.a);
        put_u32(out, st.b);
        put_u32(out, st.c);
        put_u32(out, st.d);
        put_u32(out, st.skip);
        put_list(out, st.list);
    }
    if (!out) throw FormatError("schedule: write failed");
}

Schedule load_schedule(std::istream& in) {
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) throw FormatError("schedule: bad magic");
    std::uint32_t version = get_u32(in);
    if (version != kVersion)
        throw FormatError("schedule: unsupported version " + std::to_string(version));

    Schedule s;
    s.graph_digest = get_u64(in);
    int mode = in.get();
    if (mode != 0 && mode != 1) throw FormatError("schedule: bad mode byte");
    s.mode = EncodeMode(mode);
    s.n_work_bits = get_u64(in);
    s.n_out_bits = get_u64(in);
    s.n_slots = get_u64(in);
    s.xor_budget = get_u64(in);
    s.info_positions = get_list(in);
    s.clone_origin = get_list(in);
    std::uint32_t n_steps = get_u32(in);
    for (std::uint32_t i = 0; i < n_steps; ++i) {
        Step st;
        int op = in.get(), tag = in.get();
        if (op < 0 || op > int(StepOp::flip_if_xor) || tag < 0 || tag > 2)
            throw FormatError("schedule: bad step encoding");
        st.op = StepOp(op);
        st.tag = CorrectionCase(tag);
        st.a = get_u32(in);
        st.b = get_u32(in);
        st.c = get_u32(in);
        st.d = get_u32(in);
        st.skip = get_u32(in);
        st.list = get_list(in);
        s.steps.push_back(std::move(st));
    }
    if (!in) throw FormatError("schedule: truncated file");

    for (bit_index p : s.info_positions)
        if (p >= s.n_work_bits) throw FormatError("schedule: info position out of range");
    return s;
}

void save_schedule_file(const std::string& path, const Schedule& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    save_schedule(out, s);
}

Schedule load_schedule_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return load_schedule(in);
}

} // namespace ldpcenc
