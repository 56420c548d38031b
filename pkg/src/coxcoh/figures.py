"""Matplotlib rendering of report figures: written next to the JSON/table
output when the CLI is invoked with --figures."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["render_report"]


def render_report(report: dict, directory: str) -> str:
    """Render one PNG for a report dict; returns the file path."""
    os.makedirs(directory, exist_ok=True)
    stem = report.get("command", "report").replace(" ", "-")
    group = report.get("group")
    if group:
        stem += "-" + str(group).replace("(", "").replace(")", "")
    path = os.path.join(directory, f"{stem}.png")
    h_dims = report.get("h_dims")
    if h_dims:
        _render_dims(report, path)
    else:
        _render_checks(report, path)
    return path


def _render_dims(report: dict, path: str) -> None:
    h = report.get("h_dims") or []
    s = report.get("space_dims") or []
    degrees = list(range(max(len(h), len(s))))
    fig, ax = plt.subplots(figsize=(6, 3.5))
    width = 0.4
    if s:
        ax.bar([d - width / 2 for d in degrees], s + [0] * (len(degrees) - len(s)),
               width=width, label="space dim", color="#b0c4de")
    if h:
        ax.bar([d + width / 2 for d in degrees], h + [0] * (len(degrees) - len(h)),
               width=width, label="H dim", color="#2f4f4f")
    ax.set_xticks(degrees)
    ax.set_xlabel("degree")
    ax.set_ylabel("dimension")
    title = report.get("command", "")
    if report.get("group"):
        title += f" {report['group']}"
    ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _render_checks(report: dict, path: str) -> None:
    checks = report.get("checks") or []
    passed = sum(1 for c in checks if c.get("status") == "pass")
    failed = len(checks) - passed
    fig, ax = plt.subplots(figsize=(4, 3))
    ax.bar(["pass", "fail"], [passed, failed], color=["#2e8b57", "#b22222"])
    ax.set_ylabel("checks")
    ax.set_title(report.get("command", ""))
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
