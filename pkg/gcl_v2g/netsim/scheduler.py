#    Copyright 2026 Genesis Corporation.
#
#    All Rights Reserved.
#
#    Licensed under the Apache License, Version 2.0 (the "License"); you may
#    not use this file except in compliance with the License. You may obtain
#    a copy of the License at
#
#         http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
#    WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
#    License for the specific language governing permissions and limitations
#    under the License.

"""Discrete-event core.

Simulated time is an integer number of microseconds. Events run in
(time, insertion sequence) order, so a simulation is fully deterministic.

Simulated processes are generators that yield SimFuture objects and are
resumed with the future's result (or have its exception thrown in)::

    def client(sim):
        yield scheduler.sleep(sim.scheduler, 10 * constants.MSEC)
        data = yield from stream.read(timeout=constants.SEC)
"""

from __future__ import annotations

import heapq
import itertools
import logging
import typing as tp

from gcl_v2g.netsim import exceptions as net_exc

LOG = logging.getLogger(__name__)

_PENDING = object()

Process = tp.Generator["SimFuture", tp.Any, tp.Any]


class Event:
    __slots__ = ("when", "seq", "callback", "args", "cancelled")

    def __init__(self, when: int, seq: int, callback: tp.Callable, args: tuple):
        self.when = when
        self.seq = seq
        self.callback = callback
        self.args = args
        self.cancelled = False

    def __lt__(self, other: Event) -> bool:
        return (self.when, self.seq) < (other.when, other.seq)

    def cancel(self) -> None:
        self.cancelled = True


class EventScheduler:
    def __init__(self) -> None:
        self.now = 0
        self._queue: list[Event] = []
        self._seq = itertools.count()
        self.executed = 0

    def __len__(self) -> int:
        return sum(1 for e in self._queue if not e.cancelled)

    @property
    def idle(self) -> bool:
        return not any(not e.cancelled for e in self._queue)

    def call_at(self, when: int, callback: tp.Callable, *args: tp.Any) -> Event:
        if when < self.now:
            raise ValueError(f"Cannot schedule in the past: {when} < {self.now}")
        event = Event(when, next(self._seq), callback, args)
        heapq.heappush(self._queue, event)
        return event

    def call_later(self, delay: int, callback: tp.Callable, *args: tp.Any) -> Event:
        return self.call_at(self.now + delay, callback, *args)

    def call_soon(self, callback: tp.Callable, *args: tp.Any) -> Event:
        return self.call_at(self.now, callback, *args)

    def next_time(self) -> int | None:
        while self._queue and self._queue[0].cancelled:
            heapq.heappop(self._queue)
        return self._queue[0].when if self._queue else None

    def step(self) -> bool:
        """Run one event. Returns False when there is nothing to run."""
        while self._queue:
            event = heapq.heappop(self._queue)
            if event.cancelled:
                continue
            self.now = event.when
            self.executed += 1
            event.callback(*event.args)
            return True
        return False

    def run(self, until: int | None = None) -> None:
        """Run until quiescent or until simulated time passes `until`."""
        while True:
            when = self.next_time()
            if when is None:
                return
            if until is not None and when > until:
                self.now = until
                return
            self.step()

    def spawn(self, process: Process, name: str = "process") -> SimProcess:
        return SimProcess(self, process, name)


class SimFuture:
    def __init__(self, scheduler: EventScheduler, what: str = "future") -> None:
        self.scheduler = scheduler
        self.what = what
        self._result: tp.Any = _PENDING
        self._exception: BaseException | None = None
        self._callbacks: list[tp.Callable[[SimFuture], None]] = []

    def __repr__(self) -> str:
        return f"<SimFuture {self.what} done={self.done()}>"

    def done(self) -> bool:
        return self._result is not _PENDING or self._exception is not None

    def result(self) -> tp.Any:
        if self._exception is not None:
            raise self._exception
        if self._result is _PENDING:
            raise RuntimeError(f"{self.what} is not done yet")
        return self._result

    def exception(self) -> BaseException | None:
        return self._exception

    def _finish(self) -> None:
        callbacks, self._callbacks = self._callbacks, []
        for callback in callbacks:
            self.scheduler.call_soon(callback, self)

    def set_result(self, value: tp.Any) -> None:
        if self.done():
            raise RuntimeError(f"{self.what} is already done")
        self._result = value
        self._finish()

    def set_exception(self, exception: BaseException) -> None:
        if self.done():
            raise RuntimeError(f"{self.what} is already done")
        self._exception = exception
        self._finish()

    def cancel(self) -> bool:
        if self.done():
            return False
        self.set_exception(net_exc.Cancelled(what=self.what))
        return True

    def add_done_callback(self, callback: tp.Callable[[SimFuture], None]) -> None:
        if self.done():
            self.scheduler.call_soon(callback, self)
        else:
            self._callbacks.append(callback)


class SimProcess(SimFuture):
    """Drives a generator; completes with its return value."""

    def __init__(
        self, scheduler: EventScheduler, process: Process, name: str = "process"
    ) -> None:
        super().__init__(scheduler, name)
        self._process = process
        scheduler.call_soon(self._step, None, None)

    def _step(self, value: tp.Any, exception: BaseException | None) -> None:
        if self.done():
            return
        try:
            if exception is not None:
                future = self._process.throw(exception)
            else:
                future = self._process.send(value)
        except StopIteration as e:
            self.set_result(e.value)
            return
        except Exception as e:
            LOG.debug("Process %s failed: %s", self.what, e)
            self.set_exception(e)
            return

        if not isinstance(future, SimFuture):
            self._process.close()
            self.set_exception(
                TypeError(f"Process {self.what} yielded {future!r}, not a SimFuture")
            )
            return
        future.add_done_callback(self._wakeup)

    def cancel(self) -> bool:
        if self.done():
            return False
        self._process.close()
        return super().cancel()

    def _wakeup(self, future: SimFuture) -> None:
        if self.done():
            return
        exception = future.exception()
        if exception is not None:
            self._step(None, exception)
        else:
            self._step(future.result(), None)


def sleep(scheduler: EventScheduler, delay: int) -> SimFuture:
    future = SimFuture(scheduler, f"sleep {delay}")
    scheduler.call_later(delay, future.set_result, None)
    return future


def wait_for(
    scheduler: EventScheduler, future: SimFuture, timeout: int | None
) -> SimFuture:
    """Wrap `future` so that it fails with WaitTimeout after `timeout` us.

    On timeout the wrapped future is cancelled.
    """
    if timeout is None:
        return future
    wrapper = SimFuture(scheduler, future.what)

    def on_timeout() -> None:
        if not wrapper.done():
            future.cancel()
            wrapper.set_exception(
                net_exc.WaitTimeout(timeout=timeout, what=future.what)
            )

    timer = scheduler.call_later(timeout, on_timeout)

    def on_done(done: SimFuture) -> None:
        if wrapper.done():
            return
        timer.cancel()
        if done.exception() is not None:
            wrapper.set_exception(done.exception())
        else:
            wrapper.set_result(done.result())

    future.add_done_callback(on_done)
    return wrapper


def gather(scheduler: EventScheduler, futures: tp.Sequence[SimFuture]) -> SimFuture:
    """Complete with the list of results once all futures are done."""
    result = SimFuture(scheduler, "gather")
    remaining = len(futures)
    if not remaining:
        scheduler.call_soon(result.set_result, [])
        return result

    def on_done(_: SimFuture) -> None:
        nonlocal remaining
        remaining -= 1
        if remaining == 0:
            result.set_result([f.exception() or f.result() for f in futures])

    for future in futures:
        future.add_done_callback(on_done)
    return result
