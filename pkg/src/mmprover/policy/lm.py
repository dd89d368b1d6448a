"""HTTP client for an external text-completion service.

Wire contract (JSON over HTTP):

* ``POST {base}/v1/complete`` with ``{"prompt", "n", "temperature",
  "stop", "logprobs": true}`` returns ``{"choices": [{"text",
  "total_logprob"}]}``.
* ``POST {base}/v1/score`` with ``{"prompt"}`` returns
  ``{"next_token_probs": {token: probability}}``.

Suggestion prompts are ``GOAL <goal> PROOFSTEP``; scoring prompts are
``GOAL <goal> OUTCOME `` and read the probability of the ``P`` token
(falling back to 1 - p(N) when only ``N`` is reported). Transport errors
retry with exponential backoff and then degrade to whatever arrived:
searches must keep going, not abort.
"""

from __future__ import annotations

import threading
import time

import requests


class LMClient:
    def __init__(self, base_url: str, eot: str = "<|endoftext|>",
                 retries: int = 3, backoff: float = 0.25,
                 timeout: float = 30.0, session=None,
                 max_inflight: int = 8):
        self.base_url = base_url.rstrip("/")
        self.eot = eot
        self.retries = retries
        self.backoff = backoff
        self.timeout = timeout
        self.session = session or requests.Session()
        # concurrent search workers share one client; cap what we put on
        # the wire at once
        self._gate = threading.BoundedSemaphore(max_inflight)

    def _post(self, path: str, body: dict) -> dict | None:
        delay = self.backoff
        for attempt in range(self.retries):
            try:
                with self._gate:
                    resp = self.session.post(self.base_url + path, json=body,
                                             timeout=self.timeout)
                resp.raise_for_status()
                return resp.json()
            except (requests.RequestException, ValueError):
                if attempt + 1 == self.retries:
                    return None
                time.sleep(delay)
                delay *= 2
        return None

    # -- SuggesterContract --------------------------------------------------
    def suggest(self, goal_text: str, e: int, temperature: float,
                ceiling=None, rng=None):
        from . import ScoredTactic

        body = {"prompt": f"GOAL {goal_text} PROOFSTEP", "n": e,
                "temperature": temperature, "stop": self.eot,
                "logprobs": True}
        data = self._post("/v1/complete", body)
        if not data:
            return []
        out = []
        for choice in data.get("choices", ())[:e]:
            text = str(choice.get("text", "")).strip()
            if not text:
                continue
            lp = float(choice.get("total_logprob", 0.0))
            out.append(ScoredTactic(text, min(lp, 0.0)))
        return out

    # -- ScorerContract -------------------------------------------------------
    def score(self, goal_text: str) -> float:
        data = self._post("/v1/score", {"prompt": f"GOAL {goal_text} OUTCOME "})
        if not data:
            return 0.5  # transport failure: neutral value, search continues
        probs = data.get("next_token_probs", {})
        if "P" in probs:
            p = float(probs["P"])
        elif "N" in probs:
            p = 1.0 - float(probs["N"])
        else:
            p = 0.5
        return min(max(p, 0.0), 1.0)
