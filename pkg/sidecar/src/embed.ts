import * as fs from 'node:fs';

import { Encoder } from './encoder.js';

export interface InputLine {
  id: string;
  text: string;
}

// id<TAB>text per line; blank lines and # comments are skipped.
export function parseInput(content: string): InputLine[] {
  const lines: InputLine[] = [];
  const seen = new Set<string>();
  content.split('\n').forEach((raw, index) => {
    const line = raw.replace(/\r$/, '');
    if (line.trim() === '' || line.startsWith('#')) {
      return;
    }
    const tab = line.indexOf('\t');
    if (tab <= 0) {
      throw new Error(`line ${index + 1}: expected id<TAB>text`);
    }
    const id = line.slice(0, tab);
    if (seen.has(id)) {
      throw new Error(`line ${index + 1}: duplicate id '${id}'`);
    }
    seen.add(id);
    lines.push({ id, text: line.slice(tab + 1) });
  });
  return lines;
}

// One JSON record per input id. The scorer skips the # header lines.
export function renderEmbeddingFile(
  lines: InputLine[],
  encoder: Encoder,
  side: string,
  channel: string,
): string {
  const out = [
    `# encoder: ${encoder.name} (dim ${encoder.dim})`,
    '# pooling: mean over whitespace word tokens, special tokens excluded;',
    '# empty text pools the two boundary tokens instead, never all-zero',
  ];
  for (const { id, text } of lines) {
    out.push(JSON.stringify({ id, side, channel, vector: encoder.encode(text) }));
  }
  return out.join('\n') + '\n';
}

export function writeFileAtomic(path: string, content: string): void {
  const temp = `${path}.tmp-${process.pid}`;
  fs.writeFileSync(temp, content, 'utf8');
  fs.renameSync(temp, path);
}
