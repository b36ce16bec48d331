"""PCM16 WAV read/write via the stdlib wave module."""

import wave

import numpy as np


def write_wav(path, samples, sample_rate=48000):
    """Write float samples (channels, n) in [-1, 1] as 16-bit PCM."""
    s = np.asarray(samples, dtype=float)
    if s.ndim == 1:
        s = s[None, :]
    pcm = np.clip(np.round(s * 32768.0), -32768, 32767).astype("<i2")
    with wave.open(str(path), "wb") as w:
        w.setnchannels(pcm.shape[0])
        w.setsampwidth(2)
        w.setframerate(int(sample_rate))
        w.writeframes(pcm.T.tobytes())


def read_wav(path):
    """Read a 16-bit PCM WAV; returns (samples (channels, n) int16, rate)."""
    with wave.open(str(path), "rb") as w:
        if w.getsampwidth() != 2:
            raise ValueError("only 16-bit PCM supported")
        channels = w.getnchannels()
        rate = w.getframerate()
        raw = w.readframes(w.getnframes())
    data = np.frombuffer(raw, dtype="<i2").reshape(-1, channels).T
    return data.astype(np.int16), rate
