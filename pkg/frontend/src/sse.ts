/** Incremental server-sent-events parser.
 *
 * Feed arbitrary text chunks (chunk boundaries may fall anywhere, even
 * inside a UTF-8 code point upstream of this layer); complete `data:`
 * payloads come out in arrival order. Comment lines (leading ':') and
 * blank keep-alives are consumed silently.
 */

export class SseParser {
  private buffer = "";

  push(chunk: string): string[] {
    this.buffer += chunk;
    const out: string[] = [];
    for (;;) {
      const sep = this.buffer.indexOf("\n\n");
      if (sep < 0) {
        return out;
      }
      const frame = this.buffer.slice(0, sep);
      this.buffer = this.buffer.slice(sep + 2);
      const data = frameData(frame);
      if (data !== null) {
        out.push(data);
      }
    }
  }
}

function frameData(frame: string): string | null {
  const parts: string[] = [];
  for (const line of frame.split("\n")) {
    if (line.startsWith("data:")) {
      parts.push(line.slice(5).trimStart());
    }
    // comment / field lines fall through
  }
  return parts.length ? parts.join("\n") : null;
}

/** Subscribe to an SSE endpoint with fetch streaming; invokes onData for
 * every payload until the signal aborts or the stream ends. */
export async function subscribe(
  url: string,
  onData: (payload: string) => void,
  signal?: AbortSignal,
): Promise<void> {
  const response = await fetch(url, { signal, headers: { accept: "text/event-stream" } });
  if (!response.ok || response.body === null) {
    throw new Error(`stream failed: HTTP ${response.status}`);
  }
  const parser = new SseParser();
  const decoder = new TextDecoder();
  const reader = response.body.getReader();
  for (;;) {
    const { done, value } = await reader.read();
    if (done) {
      return;
    }
    for (const payload of parser.push(decoder.decode(value, { stream: true }))) {
      onData(payload);
    }
  }
}
