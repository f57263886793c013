"""FFT wrappers honouring the NLS5_THREADS worker cap."""

import os

import scipy.fft as _sfft


def workers() -> int:
    raw = os.environ.get("NLS5_THREADS", "1").strip() or "1"
    try:
        n = int(raw)
    except ValueError:
        return 1
    return -1 if n <= 0 else n


def fft(a, axis=-1):
    return _sfft.fft(a, axis=axis, workers=workers())


def ifft(a, axis=-1):
    return _sfft.ifft(a, axis=axis, workers=workers())
