// Command-line front end: key generation, file encryption/decryption with an
// optional simulated noisy channel, built-in golden-vector self checks, and
// the attack/throughput/error-rate calculators.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xlsec/xlsec.hpp"

namespace {

std::vector<xlsec::BigUint> read_plaintext(std::istream& in) {
    std::vector<xlsec::BigUint> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string tok;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) tok.push_back(c);
        if (tok.empty()) continue;
        for (std::size_t i = 0; i < tok.size(); ++i)
            if ((tok[i] < '0' || tok[i] > '9') && !(i == 0 && tok[i] == '-'))
                throw xlsec::format_error("input line " + std::to_string(lineno) +
                                          ": not a decimal integer: '" + tok + "'");
        values.emplace_back(tok);
    }
    return values;
}

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw xlsec::value_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw xlsec::value_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw xlsec::value_error("write to '" + path + "' failed");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) { out.push_back(cur); cur.clear(); }
        else cur.push_back(c);
    }
    out.push_back(cur);
    return out;
}

xlsec::SweepGrid parse_grid(const std::string& text, const std::string& what) {
    const auto parts = split(text, ':');
    xlsec::SweepGrid g;
    try {
        if (parts.size() == 1) {
            g.lo = g.hi = std::stod(parts[0]);
            g.step = 1;
        } else if (parts.size() == 2) {
            g.lo = std::stod(parts[0]);
            g.hi = std::stod(parts[1]);
            g.step = 1;
        } else if (parts.size() == 3) {
            g.lo = std::stod(parts[0]);
            g.hi = std::stod(parts[1]);
            g.step = std::stod(parts[2]);
        } else {
            throw std::invalid_argument("wrong arity");
        }
    } catch (const std::exception&) {
        throw xlsec::value_error(what + ": expected LO:HI:STEP, LO:HI, or a single value, got '" + text + "'");
    }
    return g;
}

xlsec::CascadeKey cascade_by_name(const std::string& name, std::uint64_t seed) {
    if (name == "demo8") return xlsec::make_demo8_cascade();
    if (name == "fig4x23") return xlsec::make_fig4x23_cascade();
    if (name == "identity") return xlsec::make_identity_cascade();
    if (name == "random") return xlsec::random_cascade_key(seed);
    throw xlsec::value_error("unknown cascade '" + name + "'");
}

int run_verify() {
    using namespace xlsec;
    bool all_ok = true;
    const auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "ok:   " : "FAIL: ") << name << "\n";
        all_ok = all_ok && ok;
    };

    const std::vector<BigUint> msg = {398, 453, 876, 200, 356, 165, 265, 897};
    const std::vector<BigUint> rsa_golden = {151, 293, 252, 135, 304, 315, 265, 182};
    const std::vector<BigUint> canonical = {398, 453, 395, 200, 356, 165, 265, 416};

    const RsaKeyPair kp = derive_keypair(13, 37, 5);
    check("rsa private exponent", kp.d == 173);
    {
        bool ok = true;
        for (std::size_t i = 0; i < msg.size(); ++i) {
            const BigUint c = encrypt_value(kp.public_key(), msg[i] % kp.m);
            ok = ok && c == rsa_golden[i] && decrypt_value(kp.private_key(), c) == canonical[i];
        }
        check("rsa golden block", ok);
    }

    const ModuliSet ms = build_moduli_set({107, 109, 113});
    {
        const ResidueVector rv = to_residues(ms, 151);
        const bool ok = rv.values == std::vector<std::uint32_t>({44, 42, 38}) &&
                        from_residues(ms, rv) == 151;
        check("residue split and recombination", ok);
    }

    {
        std::vector<std::uint32_t> seq;
        for (const auto& c : rsa_golden) seq.push_back(static_cast<std::uint32_t>(c % 107));
        const SubbandFrame frame = decompose(seq, LiftingKernel{}, 107);
        const bool ok = frame.levels.at(0) == std::vector<std::uint32_t>({98, 59, 28, 80}) &&
                        reconstruct(frame) == seq;
        check("lifting golden details", ok);
    }

    {
        const CascadeKey key = make_fig4x23_cascade();
        const Bits plain = bits_from_string("10110000" "0000"); // data + zero tail
        const Bits sent = cascade_encrypt(key, plain);
        const Bits golden_data = bits_from_string("0000111101011001");
        bool ok = sent.size() == 24 && std::equal(golden_data.begin(), golden_data.end(), sent.begin());
        Bits flipped = sent;
        flipped[0] ^= 1;
        ok = ok && cascade_decode(key, flipped) == plain;
        check("redundant cascade golden block and single-flip decode", ok);
    }

    {
        const CascadeKey key = make_demo8_cascade();
        const Bits plain = bits_from_string("10110000" "01100001" "11111111" "00000000");
        const bool ok = cascade_decrypt(key, cascade_encrypt(key, plain)) == plain;
        check("wide cascade algebraic inversion", ok);
    }

    {
        KeyBundle kb;
        kb.rsa = kp;
        kb.moduli = ms;
        kb.cascade = make_fig4x23_cascade();
        const FrameSet fs = encrypt_pipeline(kb, msg);
        const bool ok = decrypt_pipeline(kb, fs) == canonical &&
                        bundle_from_text(bundle_to_text(kb)) == kb &&
                        frames_from_csv(frames_to_csv(fs)) == fs;
        check("pipeline round trip and serialization", ok);
    }

    {
        const bool ok = keyspace_matrix_connections(8, 2) == 65536 &&
                        keyspace_transition_functions(8) == 256 &&
                        keyspace_sbox(4, 2) == 16 && keyspace_pbox(8) == 823543;
        check("keyspace counts", ok);
    }

    std::cout << (all_ok ? "verify: all checks passed\n" : "verify: FAILURES above\n");
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cross-layer encryption pipeline tool"};
    app.require_subcommand(1);

    // keygen
    auto* keygen = app.add_subcommand("keygen", "derive a key bundle and write it to a file");
    std::string kg_primes, kg_e = "5", kg_moduli, kg_cascade = "fig4x23", kg_kernel = "2,0,0", kg_out;
    std::uint64_t kg_seed = 0;
    keygen->add_option("--primes", kg_primes, "two primes P,Q")->required();
    keygen->add_option("--e", kg_e, "public exponent");
    keygen->add_option("--moduli", kg_moduli, "pairwise-coprime residue moduli A,B,C")->required();
    keygen->add_option("--cascade", kg_cascade, "cascade construction")
        ->check(CLI::IsMember({"demo8", "fig4x23", "random", "identity"}));
    keygen->add_option("--kernel", kg_kernel, "lifting prediction taps h1,h2,h3");
    keygen->add_option("--seed", kg_seed, "seed for random cascade material and the channel default");
    keygen->add_option("--out", kg_out, "output bundle path")->required();

    // encrypt
    auto* encrypt = app.add_subcommand("encrypt", "encrypt a plaintext file into frame rows");
    std::string en_key, en_in, en_out;
    std::uint64_t en_block = 0;
    encrypt->add_option("--key", en_key, "key bundle path")->required();
    encrypt->add_option("--in", en_in, "plaintext path, one integer per line ('-' for stdin)")->required();
    encrypt->add_option("--out", en_out, "frame csv path ('-' for stdout)")->required();
    encrypt->add_option("--block-size", en_block, "values per block (power of two; 0 = single block)");

    // decrypt
    auto* decrypt = app.add_subcommand("decrypt", "decrypt frame rows back to plaintext");
    std::string de_key, de_in, de_out;
    double de_pe = 0.0;
    std::uint64_t de_seed = 0;
    decrypt->add_option("--key", de_key, "key bundle path")->required();
    decrypt->add_option("--in", de_in, "frame csv path ('-' for stdin)")->required();
    decrypt->add_option("--pe", de_pe, "channel bit-flip probability (default: bundle value)");
    decrypt->add_option("--seed", de_seed, "channel seed (default: bundle value)");
    decrypt->add_option("--out", de_out, "recovered plaintext path ('-' for stdout)")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "run built-in golden-vector checks");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "emit csv curves on stdout");
    analyze->require_subcommand(1);

    auto* attack = analyze->add_subcommand("attack", "search-cost model of the two defences");
    std::string at_p = "1009", at_q = "1013", at_stages = "1:4";
    std::uint64_t at_blocks = 100, at_states = 16;
    std::uint32_t at_k = 2;
    attack->add_option("--rsa-p", at_p, "first factor");
    attack->add_option("--rsa-q", at_q, "second factor");
    attack->add_option("--blocks", at_blocks, "known ciphertext blocks available to the attacker");
    attack->add_option("--states", at_states, "states per cascade stage");
    attack->add_option("--k", at_k, "cascade symbol width in bits");
    attack->add_option("--stages", at_stages, "stage-count sweep LO:HI");

    auto* thr = analyze->add_subcommand("throughput", "net information rate across a lossy channel");
    double th_rate = 0.0;
    std::uint64_t th_block = 0;
    std::string th_pe;
    thr->add_option("--rate", th_rate, "code rate in (0, 1]")->required();
    thr->add_option("--block-bits", th_block, "bits per retransmitted block")->required();
    thr->add_option("--pe", th_pe, "bit error probability sweep LO:HI:STEP")->required();

    auto* ber = analyze->add_subcommand("ber", "post-decoding bit error bound vs SNR");
    std::string ber_snr, ber_code, ber_exp = "L";
    ber->add_option("--snr-db", ber_snr, "per-bit SNR sweep in dB, LO:HI:STEP")->required();
    ber->add_option("--code", ber_code, "restrict to one code profile")
        ->check(CLI::IsMember({"2,2,2", "4,4,2"}));
    ber->add_option("--exponent", ber_exp, "bracket exponent: free distance L or per-path d")
        ->check(CLI::IsMember({"L", "d"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (keygen->parsed()) {
            const auto primes = split(kg_primes, ',');
            if (primes.size() != 2) throw xlsec::value_error("--primes: expected exactly P,Q");
            xlsec::KeyBundle kb;
            kb.rsa = xlsec::derive_keypair(xlsec::BigUint(primes[0]), xlsec::BigUint(primes[1]),
                                           xlsec::BigUint(kg_e));
            std::vector<std::uint32_t> moduli;
            for (const auto& tok : split(kg_moduli, ','))
                moduli.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
            kb.moduli = xlsec::build_moduli_set(moduli);
            const auto taps = split(kg_kernel, ',');
            if (taps.size() != 3) throw xlsec::value_error("--kernel: expected h1,h2,h3");
            kb.kernel = {std::stoi(taps[0]), std::stoi(taps[1]), std::stoi(taps[2])};
            kb.cascade = cascade_by_name(kg_cascade, kg_seed);
            kb.signaling.seed = kg_seed;
            xlsec::save_bundle(kb, kg_out);
            std::cerr << "wrote key bundle: " << kg_out << "\n";
        } else if (encrypt->parsed()) {
            const xlsec::KeyBundle kb = xlsec::load_bundle(en_key);
            std::istringstream in(read_file(en_in));
            const auto values = read_plaintext(in);
            xlsec::EncryptOptions opts;
            opts.block_size = static_cast<std::size_t>(en_block);
            const xlsec::FrameSet fs = xlsec::encrypt_pipeline(kb, values, opts);
            write_file(en_out, xlsec::frames_to_csv(fs));
            std::cerr << "encrypted " << values.size() << " values into " << fs.rows.size()
                      << " frame rows\n";
        } else if (decrypt->parsed()) {
            const xlsec::KeyBundle kb = xlsec::load_bundle(de_key);
            xlsec::FrameSet fs = xlsec::frames_from_csv(read_file(de_in));
            const double pe = decrypt->count("--pe") ? de_pe : kb.signaling.pe;
            const std::uint64_t seed = decrypt->count("--seed") ? de_seed : kb.signaling.seed;
            xlsec::ChannelModel channel(pe, seed);
            fs = xlsec::corrupt_frames(fs, channel);
            const auto values = xlsec::decrypt_pipeline(kb, fs);
            std::string out;
            for (const auto& v : values) out += v.str() + "\n";
            write_file(de_out, out);
            std::cerr << "recovered " << values.size() << " values\n";
        } else if (verify->parsed()) {
            return run_verify();
        } else if (analyze->parsed()) {
            if (attack->parsed()) {
                xlsec::AttackSweep sweep;
                sweep.base.rsa_p = xlsec::BigUint(at_p);
                sweep.base.rsa_q = xlsec::BigUint(at_q);
                sweep.base.p_blocks = at_blocks;
                sweep.base.q_states = at_states;
                sweep.base.k = at_k;
                const auto grid = parse_grid(at_stages, "--stages");
                sweep.stages_lo = static_cast<std::uint32_t>(grid.lo);
                sweep.stages_hi = static_cast<std::uint32_t>(grid.hi);
                sweep.base.stages = sweep.stages_lo;
                xlsec::validate_attack_params(sweep.base);
                std::cout << xlsec::emit_curves(sweep);
            } else if (thr->parsed()) {
                xlsec::ThroughputSweep sweep;
                sweep.rate = th_rate;
                sweep.block_bits = th_block;
                sweep.pe = parse_grid(th_pe, "--pe");
                std::cout << xlsec::emit_curves(sweep);
            } else {
                xlsec::BerSweep sweep;
                sweep.snr_db = parse_grid(ber_snr, "--snr-db");
                sweep.mode = ber_exp == "d" ? xlsec::ExponentMode::D : xlsec::ExponentMode::L;
                if (ber_code == "2,2,2") sweep.profiles = {xlsec::code_profile_k2()};
                else if (ber_code == "4,4,2") sweep.profiles = {xlsec::code_profile_k4()};
                std::cout << xlsec::emit_curves(sweep);
            }
        }
    } catch (const xlsec::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
