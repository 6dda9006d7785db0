"""Select the compiled kernels when available, else the pure-Python mirror.

Set MLF_PURE_PYTHON=1 to force the fallback regardless of what is installed.
"""

import os

if os.environ.get("MLF_PURE_PYTHON", "") == "1":
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        from . import _kernels_py as kernels

NAME = kernels.NAME
lgamma_pos = kernels.lgamma_pos
digamma_real = kernels.digamma_real
rgamma_real = kernels.rgamma_real
erfc_real = kernels.erfc_real
gamma_p = kernels.gamma_p
ml_taylor_sum = kernels.ml_taylor_sum
e1b_series = kernels.e1b_series
neg_axis_integral = kernels.neg_axis_integral
stable_series = kernels.stable_series
EULER_GAMMA = kernels.EULER_GAMMA
