"""Base-aircraft surrogate predicting two weight variants.

Generates the 1560-point base database on the 20-parameter envelope, fits
one sparse quadratic surrogate per wing station, then checks the predicted
envelope maximum against simulated ground truth for the envelope with mass
scaled by 0.9 and by 1.1. Takes well under a minute.
"""

import time

import numpy as np

from gustsurf import pipeline, simdb

t0 = time.perf_counter()
study = pipeline.run_variant_study(n=1560, seed=42, l=80, k_folds=6, alpha=0.01)
print(f"pipeline finished in {time.perf_counter() - t0:.1f} s")

sizes = [m.p for m in study.models]
print(f"support sizes chosen by CV: min {min(sizes)}, median {int(np.median(sizes))}, max {max(sizes)}")
used = {study.models[0].feature_map.names[i]
        for m in study.models for j in m.support for i in study.models[0].feature_map.terms[j]}
print(f"nuisance parameters that slipped in somewhere: {sorted(used & set(simdb.NUISANCE_PARAMETERS))}")

for scale, met in study.metrics.items():
    print(f"\nmass x{scale}")
    print(f"  max relative error of envelope max: {met.max_relative_error:.2%}")
    print(f"  root station error:                 {met.root_relative_error:.2%}")
    print(f"  99% interval covers truth at {int(np.sum(met.covered))}/{met.stations.size} stations")
    print(f"  widest interval relative to truth:  {met.max_relative_width:.2%}")
    print("   station   true MN m   pred MN m")
    for k in range(0, met.stations.size, 11):
        print(f"   {met.stations[k]:7.2f}   {met.reference_max[k] / 1e6:9.3f}   {met.predicted_max[k] / 1e6:9.3f}")
