// Copyright 2026 The qchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Every check is property-based over fixed seeds.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qchan/cli.hpp"
#include "qchan/generators.hpp"
#include "qchan/probes.hpp"
#include "qchan/spec_io.hpp"

namespace qchan {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0 = no limit
  std::function<Outcome()> body;
};

const std::vector<BipartiteDims> kMesDims{{2, 2}, {2, 4}, {3, 3}, {3, 6}};

KrausChannel haar_channel(Index d, Rng& rng) {
  return KrausChannel::conjugation(haar_unitary(d, rng));
}

KrausChannel isometry_channel(Index d_in, Index d_out, Rng& rng) {
  return KrausChannel::conjugation(random_isometry(d_in, d_out, rng));
}

std::string count(const char* what, long n) { return std::to_string(n) + " " + what; }

// 1. Local Haar unitaries keep every sampled MES maximally entangled.
Outcome local_unitaries_preserve_mes() {
  const Tolerances tol{1e-8, 1e-8};
  long failures = 0, states = 0;
  for (const BipartiteDims d : kMesDims) {
    for (std::uint64_t s = 0; s < 25; ++s) {
      Rng rng(Seed{1000 + s}, static_cast<std::uint64_t>(d.m * 10 + d.n));
      const KrausChannel a = haar_channel(d.m, rng), b = haar_channel(d.n, rng);
      const ProbeReport r = probe_mes_preservation(a, b, d, 8, Seed{s}, tol);
      states += r.samples_used;
      if (r.verdict != Verdict::Preserves) ++failures;
    }
  }
  return {failures == 0, count("MES inputs", states) + ", " + count("failures", failures)};
}

// 2. Generic Stinespring channels on one side violate MES preservation.
Outcome stinespring_channels_violate_mes() {
  long missed = 0, unverified = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const BipartiteDims d = kMesDims[s % kMesDims.size()];
    const Index e = 2 + static_cast<Index>(s % 2);
    const bool on_b = (s / 2) % 2 == 0;
    Rng rng(Seed{2000 + s});
    const Index side = on_b ? d.n : d.m;
    const KrausChannel noisy = random_cptp(side, side, e, rng);
    const KrausChannel a = on_b ? KrausChannel::identity(d.m) : noisy;
    const KrausChannel b = on_b ? noisy : KrausChannel::identity(d.n);
    const ProbeReport r = probe_mes_preservation(a, b, d, 64, Seed{s});
    if (r.verdict != Verdict::Violates) {
      ++missed;
    } else if (!reverify(r, a, b)) {
      ++unverified;
    }
  }
  return {missed == 0 && unverified == 0,
          "50 channels, " + count("missed", missed) + ", " + count("not re-verified", unverified)};
}

// 3. Behavioral purity agrees with the structural classifier.
Outcome purity_dichotomy() {
  long disagreements = 0, generic_misclassified = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(Seed{3000 + s});
    const Index din = 2 + static_cast<Index>(s % 3);
    const Index dout = din + static_cast<Index>(s % 3);
    const KrausChannel iso = isometry_channel(din, dout, rng);
    const KrausChannel cp = random_constant_pure_channel(din, dout, rng);
    const KrausChannel gen = random_cptp(din, dout, 2 + static_cast<Index>(s % 3), rng);
    const struct {
      const KrausChannel* ch;
      bool expect_pure;
    } cases[] = {{&iso, true}, {&cp, true}, {&gen, false}};
    for (const auto& c : cases) {
      const ChannelClass cls = classify(*c.ch);
      const bool structural = cls.is_isometric() || cls.tag == ChannelTag::ConstantPure;
      const bool behavioral = is_pure_preserving_behavioral(*c.ch, 50, Seed{s}).pure_preserving;
      if (structural != behavioral || behavioral != c.expect_pure) ++disagreements;
    }
    if (classify(gen).tag != ChannelTag::Other) ++generic_misclassified;
  }
  return {disagreements == 0 && generic_misclassified == 0,
          "300 channels, " + count("disagreements", disagreements) + ", " +
              count("generic misclassified", generic_misclassified)};
}

// 4. Schmidt rank equals the construction target and a Gaussian-elimination rank.
Outcome schmidt_rank_oracle() {
  long mismatches = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    Rng rng(Seed{4000 + s});
    const BipartiteDims d{1 + static_cast<Index>(rng.uniform_int(1, 3)),
                          1 + static_cast<Index>(rng.uniform_int(1, 5))};
    const auto r = static_cast<Index>(rng.uniform_int(1, static_cast<std::uint64_t>(d.min())));
    const PureState psi = random_pure_with_rank(d, r, rng);
    const Index measured = schmidt_rank(psi);
    const Index brute = oracle::gaussian_rank(psi.coefficient_matrix(), Tolerances{}.rank_tol);
    if (measured != r || brute != r) ++mismatches;
  }
  return {mismatches == 0, "500 states up to 4x6, " + count("mismatches", mismatches)};
}

// 5. Mixed-MES detector: accept constructions, reject noisy versions, agree
//    with the pure detector on rank-1 inputs.
Outcome mixed_mes_detector() {
  const std::vector<BipartiteDims> dims{{2, 4}, {2, 6}, {3, 6}, {4, 2}, {6, 2}, {6, 3}};
  long rejected = 0, accepted_noisy = 0, total = 0;
  for (const BipartiteDims d : dims) {
    for (std::uint64_t s = 0; s < 100; ++s) {
      Rng rng(Seed{5000 + s}, static_cast<std::uint64_t>(d.m * 10 + d.n));
      const auto k = static_cast<Index>(
          rng.uniform_int(1, static_cast<std::uint64_t>(d.max() / d.min())));
      const DensityMatrix rho = random_mes_mixed(d, k, rng);
      ++total;
      if (!is_mes_mixed(rho)) ++rejected;
      const double eps = 1e-3;
      const Index t = d.total();
      const ComplexMatrix noisy =
          (1 - eps) * rho.matrix() + eps * ComplexMatrix::Identity(t, t) / double(t);
      if (is_mes_mixed(DensityMatrix(d, noisy))) ++accepted_noisy;
    }
  }
  long disagree = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(Seed{5500 + s});
    const BipartiteDims d{2 + static_cast<Index>(s % 3), 2 + static_cast<Index>((s / 3) % 4)};
    const PureState psi = s % 2 == 0
                              ? random_mes_pure(d, rng)
                              : PureState::normalized(d, ginibre(d.total(), 1, rng).col(0));
    if (is_mes_mixed(DensityMatrix::from_pure(psi)) != is_mes_pure(psi)) ++disagree;
  }
  return {rejected == 0 && accepted_noisy == 0 && disagree == 0,
          std::to_string(total) + " mixtures, " + count("wrongly rejected", rejected) + ", " +
              count("noisy accepted", accepted_noisy) + ", " +
              count("rank-1 disagreements", disagree) + " of 200"};
}

// 6. Local isometries preserve Schmidt-r pure states; Other channels do not.
Outcome isometries_preserve_schmidt_rank() {
  struct Pair {
    Index m, m_out, n, n_out;
  };
  const Pair pairs[] = {{2, 4, 2, 4}, {3, 5, 3, 5}, {2, 4, 3, 5}};
  long failures = 0, runs = 0;
  for (const Pair& p : pairs) {
    const BipartiteDims d{p.m, p.n};
    for (const Index r : {Index{2}, d.min()}) {
      Rng rng(Seed{6000 + static_cast<std::uint64_t>(p.m * 100 + p.n * 10 + r)});
      const KrausChannel a = isometry_channel(p.m, p.m_out, rng);
      const KrausChannel b = isometry_channel(p.n, p.n_out, rng);
      ++runs;
      if (probe_schmidt_r_preservation(a, b, d, r, 64, Seed{static_cast<std::uint64_t>(r)}).verdict != Verdict::Preserves)
        ++failures;
    }
  }
  long missed = 0, not_other = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(Seed{6500 + s});
    const BipartiteDims d{2 + static_cast<Index>(s % 2), 2 + static_cast<Index>((s / 2) % 2)};
    const KrausChannel noisy = random_cptp(d.n, d.n + static_cast<Index>(s % 2),
                                           2 + static_cast<Index>(s % 2), rng);
    if (classify(noisy).tag != ChannelTag::Other) {
      ++not_other;
      continue;
    }
    const KrausChannel id = KrausChannel::identity(d.m);
    const ProbeReport rep = probe_schmidt_r_preservation(id, noisy, d, 2, 64, Seed{s});
    if (rep.verdict != Verdict::Violates || !reverify(rep, id, noisy)) ++missed;
  }
  return {failures == 0 && missed == 0 && not_other == 0,
          std::to_string(runs) + " isometry runs x 64 samples, " + count("failures", failures) +
              "; 50 Other channels, " + count("missed", missed)};
}

// 7. Separable-preservation branches.
Outcome separable_branches() {
  Rng rng(Seed{7000});
  const BipartiteDims d{2, 3};
  const ProbeReport cp = probe_separable_preservation(
      random_constant_pure_channel(2, 3, rng), random_constant_pure_channel(3, 2, rng), d);
  const ProbeReport iso =
      probe_separable_preservation(isometry_channel(2, 4, rng), isometry_channel(3, 5, rng), d);
  const ProbeReport deph = probe_separable_preservation(
      KrausChannel::identity(2), named_channel("dephasing", 0.5, 3), d);
  const bool ok = cp.verdict == Verdict::Preserves && iso.verdict == Verdict::Preserves &&
                  deph.verdict == Verdict::Violates;
  return {ok, "constant-pure pair " + std::string(to_string(cp.verdict)) + ", isometry pair " +
                  std::string(to_string(iso.verdict)) + ", dephasing(0.5) " +
                  std::string(to_string(deph.verdict))};
}

// 8. Schmidt-number monotonicity and entropy invariance.
Outcome monotonicity_suite() {
  long violations = 0, inconclusive = 0, isometric = 0;
  double worst_entropy = 0.0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Rng rng(Seed{8000 + s});
    const BipartiteDims d{2 + static_cast<Index>(rng.uniform_int(0, 1)),
                          2 + static_cast<Index>(rng.uniform_int(0, 2))};
    const auto pick = [&](Index din) {
      switch (rng.uniform_int(0, 3)) {
        case 0:
          return haar_channel(din, rng);
        case 1:
          return isometry_channel(din, din + 1, rng);
        case 2:
          return random_constant_pure_channel(din, 2, rng);
        default:
          return random_cptp(din, din, 2, rng);
      }
    };
    const KrausChannel a = pick(d.m), b = pick(d.n);
    const auto r = static_cast<Index>(rng.uniform_int(1, static_cast<std::uint64_t>(d.min())));
    const PureState psi = random_pure_with_rank(d, r, rng);
    const MonotonicityCheck m = check_schmidt_monotonicity(a, b, psi);
    if (m.outcome == CheckOutcome::Violation) ++violations;
    if (m.outcome == CheckOutcome::Inconclusive) ++inconclusive;
    if (classify(a).is_isometric() && classify(b).is_isometric()) {
      ++isometric;
      worst_entropy = std::max(worst_entropy, check_entropy_invariance(a, b, psi).deviation);
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", worst_entropy);
  return {violations == 0 && worst_entropy < 1e-9,
          "1000 pairs, " + count("violations", violations) + ", " +
              count("inconclusive", inconclusive) + "; " + std::to_string(isometric) +
              " isometric pairs, max entropy deviation " + buf};
}

// 9. Pinching identity from the one-sided argument.
Outcome proof_identity() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(Seed{9000 + s});
    const BipartiteDims d{2 + static_cast<Index>(rng.uniform_int(0, 2)),
                          2 + static_cast<Index>(rng.uniform_int(0, 2))};
    const auto r = static_cast<Index>(rng.uniform_int(1, static_cast<std::uint64_t>(d.min())));
    const PureState psi = random_pure_with_rank(d, r, rng);
    const Index d_out = 2 + static_cast<Index>(rng.uniform_int(0, 2));
    const Index e = 1 + static_cast<Index>(rng.uniform_int(0, 3));
    const KrausChannel ch = random_cptp(d.n, d_out, std::max(e, (d.n + d_out - 1) / d_out), rng);
    const auto i0 = static_cast<Index>(rng.uniform_int(0, static_cast<std::uint64_t>(r - 1)));
    worst = std::max(worst, check_proof_identity(ch, psi, i0).residual);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", worst);
  return {worst < 1e-9, std::string("200 triples, max residual ") + buf};
}

// 10. Choi <-> Kraus roundtrip and minimal Kraus count.
Outcome choi_roundtrip() {
  long unequal = 0, count_mismatch = 0;
  const Tolerances tol{1e-9, 1e-8};
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(Seed{10000 + s});
    const Index din = 1 + static_cast<Index>(rng.uniform_int(1, 3));
    const Index dout = 1 + static_cast<Index>(rng.uniform_int(1, 3));
    const Index e = 1 + static_cast<Index>(rng.uniform_int(0, static_cast<std::uint64_t>(din * dout + 1)));
    const KrausChannel ch = random_cptp(din, dout, std::max(e, (din + dout - 1) / dout), rng);
    const ChoiMatrix c = choi(ch);
    const KrausChannel back = kraus_from_choi(c, tol);
    if (!channels_equal(ch, back, tol)) ++unequal;
    if (static_cast<Index>(back.kraus().size()) != numerical_rank(c.matrix, tol)) ++count_mismatch;
  }
  return {unequal == 0 && count_mismatch == 0,
          "100 channels, " + count("roundtrip mismatches", unequal) + ", " +
              count("Kraus count != Choi rank", count_mismatch)};
}

// 11. CLI determinism and bit-exact file roundtrip.
Outcome cli_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("qchan_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto run = [](std::vector<std::string> args, std::string& out) {
    std::ostringstream o, e;
    const int code = cli::run(args, o, e);
    out = o.str();
    return code;
  };
  std::string sink, first, second;
  bool ok = true;
  const std::string ch = (dir / "ch.json").string();
  ok &= run({"gen", "cptp", "--d-in", "2", "--d-out", "2", "--e", "2", "--seed", "3", "--out", ch},
            sink) == cli::kExitOk;
  const std::vector<std::string> probe{"probe", "mes", "--channel-b", ch, "--dims", "2", "2",
                                       "--seed", "42", "--format", "json"};
  run(probe, first);
  run(probe, second);
  const bool identical = !first.empty() && first == second;

  // Every generator kind: parse(file) equals the in-memory object bit for bit,
  // and re-serializing reproduces the file byte for byte.
  long mismatched = 0;
  struct Gen {
    std::vector<std::string> args;
    std::function<io::json(Rng&)> make;
  };
  const std::vector<Gen> gens{
      {{"unitary", "--d", "3"},
       [](Rng& r) { return io::to_json(KrausChannel::conjugation(haar_unitary(3, r))); }},
      {{"isometry", "--d-in", "2", "--d-out", "5"},
       [](Rng& r) { return io::to_json(KrausChannel::conjugation(random_isometry(2, 5, r))); }},
      {{"cptp", "--d-in", "3", "--d-out", "2", "--e", "3"},
       [](Rng& r) { return io::to_json(random_cptp(3, 2, 3, r)); }},
      {{"constant-pure", "--d-in", "2", "--d-out", "3"},
       [](Rng& r) { return io::to_json(random_constant_pure_channel(2, 3, r)); }},
      {{"mes-pure", "--dims", "3", "4"},
       [](Rng& r) { return io::to_json(random_mes_pure({3, 4}, r)); }},
      {{"mes-mixed", "--dims", "2", "6", "--k", "3"},
       [](Rng& r) { return io::to_json(random_mes_mixed({2, 6}, 3, r)); }},
      {{"pure-rank", "--dims", "4", "6", "--r", "3"},
       [](Rng& r) { return io::to_json(random_pure_with_rank({4, 6}, 3, r)); }},
  };
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::string path = (dir / ("g" + std::to_string(g) + ".json")).string();
    std::vector<std::string> args{"gen"};
    args.insert(args.end(), gens[g].args.begin(), gens[g].args.end());
    args.insert(args.end(), {"--seed", "11", "--out", path});
    if (run(args, sink) != cli::kExitOk) {
      ++mismatched;
      continue;
    }
    Rng rng(Seed{11});
    const io::json expected = gens[g].make(rng);
    const std::string text = io::read_file(path);
    const io::json parsed = io::json::parse(text);
    if (parsed != expected || io::format_document(parsed) != text) ++mismatched;
    // Matrices/vectors parsed back equal the serialized doubles exactly.
    if (parsed.contains("kraus")) {
      const io::ChannelSpec spec = io::parse_channel(text);
      if (io::to_json(spec.kraus.front()) != expected["kraus"][0]) ++mismatched;
    }
  }
  fs::remove_all(dir);
  ok &= identical && mismatched == 0;
  return {ok, std::string("probe --seed 42 twice ") + (identical ? "byte-identical" : "DIFFERS") +
                  ", " + std::to_string(gens.size()) + " generator kinds, " +
                  count("roundtrip mismatches", mismatched)};
}

}  // namespace
}  // namespace qchan

int main() {
  using namespace qchan;
  const std::vector<Criterion> criteria{
      {1, "local unitaries preserve sampled MES (pure and mixed)", 10.0,
       local_unitaries_preserve_mes},
      {2, "Stinespring channels violate MES preservation, counterexamples replay", 30.0,
       stinespring_channels_violate_mes},
      {3, "behavioral purity agrees with structural classification", 0.0, purity_dichotomy},
      {4, "Schmidt rank matches construction and elimination oracle", 0.0, schmidt_rank_oracle},
      {5, "mixed-MES detector accepts, rejects noise, agrees on rank 1", 0.0, mixed_mes_detector},
      {6, "local isometries preserve Schmidt rank r; Other channels violate", 0.0,
       isometries_preserve_schmidt_rank},
      {7, "separable-preservation branch coverage", 0.0, separable_branches},
      {8, "Schmidt monotonicity and entropy invariance", 0.0, monotonicity_suite},
      {9, "pinching identity residual", 0.0, proof_identity},
      {10, "Choi/Kraus roundtrip and minimal Kraus count", 0.0, choi_roundtrip},
      {11, "CLI determinism and bit-exact file roundtrip", 0.0, cli_determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      o.pass = false;
      o.detail += "; exceeded " + std::to_string(static_cast<int>(c.time_limit_s)) + " s";
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %2d: %s (%.2f s) -- %s\n", o.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), secs, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
