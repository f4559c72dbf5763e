"""Correspondence analysis of a segment-by-word contingency table."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .crosstab import CrossTab, profiles
from .errors import NumericalError
from .viz import PlotModel

# Singular values below REL_TOL * sigma_max (or below ABS_TOL) are treated as zero.
REL_TOL = 1e-12
ABS_TOL = 1e-12
PROFILE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class CAEmbedding:
    r"""Full-dimensional CA solution.

    Attributes
    ----------
    singular_values : ndarray, shape (K,)
        Non-increasing, strictly positive.
    row_principal, col_principal : ndarray, shapes (I, K) and (J, K)
        Principal coordinates. Euclidean distances between rows of
        ``row_principal`` are chi-squared distances between row profiles.
    row_standard, col_standard : ndarray
        Principal coordinates divided by the singular value of each axis.
    total_inertia : float
        :math:`\sum_k \sigma_k^2`, equal to Pearson's chi-squared over n.
    """

    singular_values: np.ndarray
    row_principal: np.ndarray
    col_principal: np.ndarray
    row_standard: np.ndarray
    col_standard: np.ndarray
    total_inertia: float
    axis_inertia_pct: np.ndarray
    row_masses: np.ndarray
    col_masses: np.ndarray
    row_labels: tuple[str, ...] = ()
    col_labels: tuple[str, ...] = ()

    @property
    def n_axes(self) -> int:
        return len(self.singular_values)

    def word_inertia(self) -> np.ndarray:
        """Per-word contribution to total inertia, c_j * sum_k G_jk^2."""
        return self.col_masses * (self.col_principal ** 2).sum(axis=1)

    def row_inertia(self) -> np.ndarray:
        return self.row_masses * (self.row_principal ** 2).sum(axis=1)


def standardized_residuals(tab: CrossTab) -> np.ndarray:
    P = tab.proportions
    r = tab.row_masses
    c = tab.col_masses
    expected = np.outer(r, c)
    return (P - expected) / np.sqrt(expected)


def _orient(u: np.ndarray, vt: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Flip each axis so the largest-magnitude entry of its left vector is positive.
    # Magnitudes equal up to roundoff count as ties and go to the lowest row.
    mag = np.abs(u)
    idx = np.argmax(mag >= mag.max(axis=0, initial=0.0) * (1 - 1e-9), axis=0)
    signs = np.sign(u[idx, np.arange(u.shape[1])])
    signs[signs == 0] = 1.0
    return u * signs, vt * signs[:, None]


def correspondence_analysis(tab: CrossTab) -> CAEmbedding:
    S = standardized_residuals(tab)
    n_rows, n_cols = S.shape
    try:
        U, sigma, Vt = np.linalg.svd(S, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge on a {n_rows}x{n_cols} table") from exc
    if not np.all(np.isfinite(sigma)):
        raise NumericalError(f"non-finite singular values on a {n_rows}x{n_cols} table")

    k_max = min(n_rows, n_cols) - 1
    smax = sigma[0] if sigma.size else 0.0
    keep = (sigma > REL_TOL * smax) & (sigma > ABS_TOL)
    keep[k_max:] = False
    k = int(keep.sum())
    U, sigma, Vt = U[:, :k], sigma[:k], Vt[:k]
    U, Vt = _orient(U, Vt)

    r = tab.row_masses
    c = tab.col_masses
    row_std = U / np.sqrt(r)[:, None]
    col_std = Vt.T / np.sqrt(c)[:, None]
    F = row_std * sigma
    G = col_std * sigma
    inertia = float(np.sum(sigma ** 2))
    pct = 100.0 * sigma ** 2 / inertia if inertia > 0 else np.zeros(0)
    for a in (F, G, row_std, col_std, sigma, pct):
        a.setflags(write=False)
    return CAEmbedding(
        singular_values=sigma,
        row_principal=F,
        col_principal=G,
        row_standard=row_std,
        col_standard=col_std,
        total_inertia=inertia,
        axis_inertia_pct=pct,
        row_masses=tab.row_masses,
        col_masses=tab.col_masses,
        row_labels=tab.row_labels,
        col_labels=tab.col_labels,
    )


def chi2_distance(tab: CrossTab, i: int, i2: int) -> float:
    """Chi-squared distance between the profiles of rows ``i`` and ``i2``."""
    rows = tab.shape[0]
    for k in (i, i2):
        if not 0 <= k < rows:
            raise IndexError(f"row {k} out of range for {rows} rows")
    prof = profiles(tab)
    diff = prof[i] - prof[i2]
    return float(np.sqrt(np.sum(diff ** 2 / tab.col_masses)))


def chi2_distance_matrix(tab: CrossTab) -> np.ndarray:
    prof = profiles(tab) / np.sqrt(tab.col_masses)
    diff = prof[:, None, :] - prof[None, :, :]
    return np.sqrt((diff ** 2).sum(axis=-1))


def project_supplementary_row(emb: CAEmbedding, supplementary_profile) -> np.ndarray:
    """Place a passive row profile in the space of ``emb``.

    The profile must be a distribution over the same vocabulary, in the same
    column order, as the table the embedding was built from.
    """
    prof = np.asarray(supplementary_profile, dtype=float)
    if prof.ndim != 1 or prof.shape[0] != emb.col_principal.shape[0]:
        raise ValueError(
            f"profile has shape {prof.shape}, expected ({emb.col_principal.shape[0]},)"
        )
    if (prof < 0).any():
        raise ValueError("profile has negative entries")
    if abs(prof.sum() - 1.0) > PROFILE_TOL:
        raise ValueError(f"profile sums to {prof.sum():.12g}, not 1")
    if emb.n_axes == 0:
        return np.zeros(0)
    return prof @ emb.col_principal / emb.singular_values


def project_supplementary_counts(emb: CAEmbedding, counts) -> np.ndarray:
    counts = np.asarray(counts, dtype=float)
    total = counts.sum()
    if total <= 0:
        raise ValueError("supplementary row has no counts in the active vocabulary")
    return project_supplementary_row(emb, counts / total)


def axis_caption(emb: CAEmbedding, axis: int) -> str:
    if axis <= emb.n_axes:
        return f"Axis {axis} ({emb.axis_inertia_pct[axis - 1]:.1f}%)"
    return f"Axis {axis} (absent)"


def planar_coordinates(emb: CAEmbedding, axes: tuple[int, int] = (1, 2), pad: bool = True,
                       which: str = "rows") -> tuple[np.ndarray, np.ndarray, tuple[int, ...]]:
    """Principal coordinates on two 1-based axes.

    Axes beyond the embedding's dimension are filled with zeros when ``pad``
    is set (and reported in the third return value); otherwise IndexError.
    """
    coords = emb.row_principal if which == "rows" else emb.col_principal
    out = []
    padded = []
    for a in axes:
        if a < 1:
            raise IndexError(f"axis {a} out of range; axes are numbered from 1")
        if a > emb.n_axes:
            if not pad:
                raise IndexError(f"axis {a} out of range; embedding has {emb.n_axes} axes")
            out.append(np.zeros(coords.shape[0]))
            padded.append(a)
        else:
            out.append(np.asarray(coords[:, a - 1]))
    return out[0], out[1], tuple(padded)


def factor_map(emb: CAEmbedding, axes: tuple[int, int] = (1, 2), include_words: bool = False,
               n_words: int = 20, pad: bool = True, glyph: str | None = None,
               highlight: Sequence[int] = (), annotate: bool = False, title: str = ""):
    """Scatter PlotModel of segments (and optionally the top-inertia words)."""
    x, y, padded = planar_coordinates(emb, axes, pad)
    n = len(x)
    labels = list(emb.row_labels) if emb.row_labels else [str(i) for i in range(n)]
    series = ["segments"] * n
    masses = list(emb.row_masses)
    xs, ys = list(x), list(y)
    if include_words and n_words > 0:
        wx, wy, _ = planar_coordinates(emb, axes, pad, which="cols")
        order = np.argsort(-emb.word_inertia(), kind="stable")[:n_words]
        for j in order:
            xs.append(wx[j])
            ys.append(wy[j])
            labels.append(emb.col_labels[j] if emb.col_labels else f"w{j}")
            series.append("words")
            masses.append(emb.col_masses[j])
    glyphs = {"segments": glyph or "o"}
    return PlotModel(
        kind="scatter",
        xs=tuple(float(v) for v in xs),
        ys=tuple(float(v) for v in ys),
        labels=tuple(labels),
        series=tuple(series),
        glyphs=glyphs,
        masses=tuple(float(m) for m in masses),
        x_caption=axis_caption(emb, axes[0]),
        y_caption=axis_caption(emb, axes[1]),
        highlight=frozenset(highlight),
        padded_axes=padded,
        text_series=frozenset({"words"}) if include_words else frozenset(),
        annotations=tuple(str(i) if i < n else "" for i in range(len(xs))) if annotate else (),
        title=title,
    )
