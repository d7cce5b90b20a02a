"""Shared test configuration.

Property tests run derandomized by default so the suite is reproducible;
set HYPOTHESIS_PROFILE=explore to let hypothesis hunt with fresh seeds.
"""

import os

from hypothesis import settings

settings.register_profile("ci", derandomize=True, deadline=None)
settings.register_profile("explore", deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))
