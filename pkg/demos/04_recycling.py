"""
Recycling leftover W states
===========================

The set strategy keeps every surviving W state (size >= 3) in a size
bucket and fuses whenever a bucket is full.  Compare the mean number of
W_3 states it consumes against the no-recycle plan for the same size.
"""

from wfusion import montecarlo, planner

for scheme in ("three", "two-basic", "two-enhanced"):
    for target in (1, 2, 3):
        config = montecarlo.StrategyConfig.default(scheme, target, runs=1000, master_seed=1)
        rec = montecarlo.mc_recycle(config)
        size = montecarlo.equal_growth_size(config)
        dp = float(planner.dp_norecycle(scheme, size).cost)
        print(
            f"{scheme:13} set {target}: recycled {rec.mean_cost:8.2f} +- {rec.std_error:5.2f}"
            f"   no-recycle W_{size}: {dp:8.2f}"
        )
