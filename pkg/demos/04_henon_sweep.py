"""
Coupled Hénon maps
==================

A coarse coupling sweep of the driver/responder Hénon pair.  The full
default sweep is what ``transcripta henon --all`` writes to disk.
"""

# %%
from dataclasses import replace

import pandas as pd

from transcripta.henon import (
    SweepConfig, experiment_entropy_complexity, experiment_order_classes,
    experiment_similarity, experiment_te_tmi,
)

sweep = replace(SweepConfig(), c_step=0.1)
pd.set_option("display.width", 120)

# %%
# transcript entropy drops and complexity changes as the pair synchronises
print(experiment_entropy_complexity(sweep).round(4))

# %%
# order classes of the transcripts; the identity takes over at strong coupling
print(experiment_order_classes(sweep).round(4))

# %%
# information flow driver -> responder in bits
print(experiment_te_tmi(sweep).round(4))

# %%
# time-averaged normalised Kendall distance between the two pattern series
print(experiment_similarity(sweep).round(4))
