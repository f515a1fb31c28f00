#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "espart/core.hpp"
#include "espart/errors.hpp"
#include "espart/rng.hpp"

namespace espart {

enum class GeneratorKind {
    UniformRandom,
    Sorted,
    Reversed,
    PlantedLis,      // param k: exact LIS = k (requires k | n)
    BlockDecreasing, // param b: LDS >= n/b (requires b | n)
    Sawtooth,        // param p: increasing teeth of length p (requires p | n)
};

// (kind, n, seed) fully determines the output permutation.
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::UniformRandom;
    std::size_t n = 0;
    std::uint64_t seed = 1;
    std::size_t param = 0;  // k / b / p where applicable

    std::string name() const {
        switch (kind) {
            case GeneratorKind::UniformRandom: return "uniform_random";
            case GeneratorKind::Sorted: return "sorted";
            case GeneratorKind::Reversed: return "reversed";
            case GeneratorKind::PlantedLis:
                return "planted_lis(k=" + std::to_string(param) + ")";
            case GeneratorKind::BlockDecreasing:
                return "block_decreasing(b=" + std::to_string(param) + ")";
            case GeneratorKind::Sawtooth:
                return "sawtooth(p=" + std::to_string(param) + ")";
        }
        return "?";
    }
};

inline Sequence generate(const GeneratorSpec& spec) {
    const std::size_t n = spec.n;
    Sequence seq;
    seq.values.reserve(n);
    auto require_divisor = [&](std::size_t d, const char* what) {
        if (d < 1 || d > n || n % d != 0)
            throw BadSpecError(std::string(what) + "=" + std::to_string(d) +
                               " must divide n=" + std::to_string(n));
    };
    switch (spec.kind) {
        case GeneratorKind::UniformRandom: {
            for (std::size_t i = 1; i <= n; ++i)
                seq.values.push_back(static_cast<Value>(i));
            Rng rng(spec.seed);
            for (std::size_t i = n; i > 1; --i)
                std::swap(seq.values[i - 1], seq.values[rng.below(i)]);
            break;
        }
        case GeneratorKind::Sorted:
            for (std::size_t i = 1; i <= n; ++i)
                seq.values.push_back(static_cast<Value>(i));
            break;
        case GeneratorKind::Reversed:
            for (std::size_t i = n; i >= 1; --i) {
                seq.values.push_back(static_cast<Value>(i));
                if (i == 1) break;
            }
            break;
        case GeneratorKind::PlantedLis: {
            if (n == 0) break;
            require_divisor(spec.param, "k");
            const std::size_t block = n / spec.param;
            // block j holds values (j*block, (j+1)*block] in decreasing
            // order: at most one element per block is usable, one per block
            // chains across, so the LIS is exactly k
            for (std::size_t j = 0; j < spec.param; ++j)
                for (std::size_t t = 0; t < block; ++t)
                    seq.values.push_back(
                        static_cast<Value>((j + 1) * block - t));
            break;
        }
        case GeneratorKind::BlockDecreasing: {
            if (n == 0) break;
            require_divisor(spec.param, "b");
            const std::size_t block = n / spec.param;
            std::vector<std::size_t> order(spec.param);
            for (std::size_t j = 0; j < spec.param; ++j) order[j] = j;
            Rng rng(spec.seed);
            for (std::size_t i = spec.param; i > 1; --i)
                std::swap(order[i - 1], order[rng.below(i)]);
            for (std::size_t slot = 0; slot < spec.param; ++slot) {
                std::size_t j = order[slot];
                for (std::size_t t = 0; t < block; ++t)
                    seq.values.push_back(
                        static_cast<Value>((j + 1) * block - t));
            }
            break;
        }
        case GeneratorKind::Sawtooth: {
            if (n == 0) break;
            require_divisor(spec.param, "p");
            const std::size_t teeth = n / spec.param;
            // tooth t rises through a value band below all earlier teeth
            for (std::size_t t = 0; t < teeth; ++t)
                for (std::size_t i = 0; i < spec.param; ++i)
                    seq.values.push_back(
                        static_cast<Value>(n - (t + 1) * spec.param + i + 1));
            break;
        }
    }
    return seq;
}

// Grammar: kind[:n][:key=value]* with keys seed, k, b, p.
// Examples: "sorted:8", "uniform_random:4096:seed=7", "planted_lis:64:k=8".
inline GeneratorSpec parse_generator(const std::string& text,
                                     bool n_required = true) {
    GeneratorSpec spec;
    std::vector<std::string> toks;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t colon = text.find(':', start);
        if (colon == std::string::npos) {
            toks.push_back(text.substr(start));
            break;
        }
        toks.push_back(text.substr(start, colon - start));
        start = colon + 1;
    }
    if (toks.empty() || toks[0].empty())
        throw BadSpecError("empty generator spec");
    const std::string& kind = toks[0];
    if (kind == "uniform_random") spec.kind = GeneratorKind::UniformRandom;
    else if (kind == "sorted") spec.kind = GeneratorKind::Sorted;
    else if (kind == "reversed") spec.kind = GeneratorKind::Reversed;
    else if (kind == "planted_lis") spec.kind = GeneratorKind::PlantedLis;
    else if (kind == "block_decreasing") spec.kind = GeneratorKind::BlockDecreasing;
    else if (kind == "sawtooth") spec.kind = GeneratorKind::Sawtooth;
    else throw BadSpecError("unknown generator kind '" + kind + "'");

    bool have_n = false;
    for (std::size_t t = 1; t < toks.size(); ++t) {
        const std::string& tok = toks[t];
        if (tok.empty()) throw BadSpecError("empty token in generator spec");
        std::size_t eq = tok.find('=');
        try {
            if (eq == std::string::npos) {
                if (have_n) throw BadSpecError("duplicate n in '" + text + "'");
                spec.n = std::stoull(tok);
                have_n = true;
            } else {
                std::string key = tok.substr(0, eq);
                std::string val = tok.substr(eq + 1);
                if (key == "seed") spec.seed = std::stoull(val);
                else if (key == "k" || key == "b" || key == "p")
                    spec.param = std::stoull(val);
                else throw BadSpecError("unknown generator option '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw BadSpecError("bad number in generator spec '" + text + "'");
        } catch (const std::out_of_range&) {
            throw BadSpecError("number out of range in '" + text + "'");
        }
    }
    if (n_required && !have_n)
        throw BadSpecError("generator spec '" + text + "' needs a length");
    bool needs_param = spec.kind == GeneratorKind::PlantedLis ||
                       spec.kind == GeneratorKind::BlockDecreasing ||
                       spec.kind == GeneratorKind::Sawtooth;
    if (needs_param && spec.param == 0)
        throw BadSpecError("generator '" + kind + "' needs its parameter");
    return spec;
}

}  // namespace espart
