"""
Plotly figures for bundle experiments.

Three static figures are produced: per-L histograms of path counts and
average effective widths, the SBN signature curve (mean +/- std of the
weights against L), and a drawing of an SBN at the base network's node
coordinates. Figures are exported to SVG through kaleido.
"""

import logging
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

import pandas as pd
import plotly.graph_objects as go
from plotly.subplots import make_subplots

logger = logging.getLogger(__name__)

# Stroke widths are rounded to this many decimals so edges share traces
WIDTH_DECIMALS = 1


class PlotlyChartGenerator:
    """
    Builds the figures written by the command line.
    """

    def __init__(self, min_stroke: float = 0.5, max_stroke: float = 6.0):
        self.default_colors = [
            '#1f77b4', '#ff7f0e', '#2ca02c', '#d62728', '#9467bd',
            '#8c564b', '#e377c2', '#7f7f7f', '#bcbd22', '#17becf'
        ]
        self.min_stroke = min_stroke
        self.max_stroke = max_stroke

    def create_bundle_histograms(self, table: pd.DataFrame, title: str = "Simple bundles") -> go.Figure:
        """
        One row of histograms per bundle length: path counts left, mu_E right.

        Args:
            table: Bundle table with columns L, path_count, mean_width
            title: Figure title

        Returns:
            Plotly Figure object
        """
        lengths = sorted(int(length) for length in table["L"].unique())
        if not lengths:
            return self._create_error_chart("No bundles to plot")

        titles = []
        for length in lengths:
            part = table[table["L"] == length]
            titles.append(f"L={length}: paths {part['path_count'].mean():.2f} ± {part['path_count'].std(ddof=0):.2f}")
            titles.append(f"L={length}: μE {part['mean_width'].mean():.2f} ± {part['mean_width'].std(ddof=0):.2f}")
        fig = make_subplots(rows=len(lengths), cols=2, subplot_titles=titles)
        for row, length in enumerate(lengths, start=1):
            part = table[table["L"] == length]
            fig.add_trace(go.Histogram(x=part["path_count"], marker_color=self.default_colors[0],
                                       name=f"paths L={length}"), row=row, col=1)
            fig.add_trace(go.Histogram(x=part["mean_width"], marker_color=self.default_colors[1],
                                       name=f"mu_E L={length}"), row=row, col=2)
        fig.update_layout(title=title, showlegend=False, height=250 * len(lengths), width=900)
        return fig

    def create_signature_chart(self, signature: pd.DataFrame, title: str = "SBN signature") -> go.Figure:
        """Mean SBN weight against L with population std as error bars."""
        data = signature.dropna(subset=["mean"])
        if data.empty:
            return self._create_error_chart("Every SBN in the signature is empty")
        fig = go.Figure(go.Scatter(
            x=data["L"], y=data["mean"], mode="lines+markers",
            error_y=dict(type="data", array=data["std"], visible=True),
            line=dict(color=self.default_colors[0]),
        ))
        fig.update_layout(title=title, xaxis_title="L", yaxis_title="SBN weight", width=700, height=450)
        return fig

    def create_sbn_figure(self, coords: Sequence[Sequence[float]],
                          weights: Dict[Tuple[int, int], float], title: str = "Simple bundles network") -> go.Figure:
        """
        Draw SBN links between node coordinates.

        Stroke width and opacity grow linearly with the weight, from the
        smallest to the largest weight present. Links with the same rounded
        width are drawn as one trace.
        """
        if coords is None:
            return self._create_error_chart("The base network has no coordinates")
        fig = go.Figure()
        if weights:
            low, high = min(weights.values()), max(weights.values())
            span = high - low
            groups: Dict[float, List[Tuple[int, int]]] = {}
            for (a, b), weight in sorted(weights.items()):
                t = (weight - low) / span if span > 0 else 1.0
                stroke = round(self.min_stroke + t * (self.max_stroke - self.min_stroke), WIDTH_DECIMALS)
                groups.setdefault(stroke, []).append((a, b))
            for stroke, pairs in sorted(groups.items()):
                xs: List[Union[float, None]] = []
                ys: List[Union[float, None]] = []
                for a, b in pairs:
                    xs += [coords[a][0], coords[b][0], None]
                    ys += [coords[a][1], coords[b][1], None]
                t = (stroke - self.min_stroke) / (self.max_stroke - self.min_stroke)
                fig.add_trace(go.Scatter(x=xs, y=ys, mode="lines", opacity=0.2 + 0.8 * t,
                                         line=dict(width=stroke, color=self.default_colors[3]),
                                         hoverinfo="skip"))
        fig.add_trace(go.Scatter(x=[c[0] for c in coords], y=[c[1] for c in coords], mode="markers",
                                 marker=dict(size=5, color="black")))
        fig.update_layout(title=title, showlegend=False, width=700, height=700,
                          xaxis=dict(visible=False), yaxis=dict(visible=False, scaleanchor="x"))
        return fig

    def write_svg(self, fig: go.Figure, path: Union[str, Path]) -> None:
        """Export a figure to SVG (requires kaleido)."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        try:
            fig.write_image(str(path), format="svg")
        except Exception as e:
            logger.error(f"Error writing SVG {path}: {e}")
            raise

    def _create_error_chart(self, error_message: str) -> go.Figure:
        """Figure that only shows a message, written instead of an empty plot."""
        fig = go.Figure()
        fig.add_annotation(
            text=error_message,
            xref="paper", yref="paper",
            x=0.5, y=0.5,
            showarrow=False,
            font=dict(size=16, color="red")
        )
        fig.update_layout(xaxis=dict(visible=False), yaxis=dict(visible=False))
        return fig


# Global chart generator instance
chart_generator = PlotlyChartGenerator()


def get_chart_generator() -> PlotlyChartGenerator:
    """
    Get the global chart generator instance.

    Returns:
        PlotlyChartGenerator: The global chart generator instance
    """
    return chart_generator
