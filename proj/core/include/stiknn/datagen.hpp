#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "stiknn/dataset.hpp"

namespace stiknn {

// Seeded splitmix64 stream with Box-Muller normals. The algorithm is fixed in
// this repo (not delegated to the standard library) so generated datasets
// reproduce across compilers. Documented in the README.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64();
    double uniform();                          // [0, 1), 53-bit
    std::pair<double, double> normal_pair();   // independent standard normals
    int uniform_int(int bound);                // [0, bound), unbiased

    // Derived stream seed for the given substream index.
    static uint64_t mix(uint64_t seed, uint64_t stream);

private:
    uint64_t state_;
};

// Two concentric circles: class 0 on the unit circle, class 1 on radius
// `factor`, angles evenly spaced over [0, 2pi), plus isotropic Gaussian noise.
Dataset make_circles(int n_per_class, double factor, double noise_std, uint64_t seed);

// Two interleaving half-circles: class 0 at (cos th, sin th), class 1 at
// (1 - cos th, 0.5 - sin th), th evenly spaced over [0, pi] inclusive.
Dataset make_moons(int n_per_class, double noise_std, uint64_t seed);

struct NoisyLabels {
    Dataset dataset;
    std::vector<int> flipped;  // ascending original indices whose label changed
};

// Flips floor(fraction * n) distinct labels, each to a uniformly chosen
// different class. Only the returned indices change.
NoisyLabels inject_label_noise(const Dataset& dataset, double fraction, uint64_t seed);

// Keeps a seeded uniform subset of one class; every other point survives.
// Original relative order is preserved.
Dataset subsample_class(const Dataset& dataset, int class_id, double keep_fraction,
                        uint64_t seed);

struct TrainTestSplit {
    Dataset train;
    Dataset test;
};

// Seeded shuffle, then split; points keep their shuffled order.
TrainTestSplit split_train_test(const Dataset& dataset, double train_fraction, uint64_t seed);

}  // namespace stiknn
