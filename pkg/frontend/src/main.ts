/**
 * Application wiring: one ViewState drives everything. Every state change
 * bumps a generation counter, pushes the encoded state onto the URL, and
 * fetches exactly the URLs buildRequests names; responses from an older
 * generation are discarded unseen.
 */
import { ApiError, buildRequests, fetchJson } from "./api.js";
import { downloadCsv, tableToCsv } from "./csv.js";
import { companyPanelModel, directorPanelModel } from "./panels.js";
import {
  banner,
  clear,
  el,
  emptyState,
  renderNetwork,
  renderPathResult,
  renderTable,
  sparkline,
} from "./render.js";
import {
  TABS,
  type Tab,
  type ViewState,
  decodeViewState,
  encodeViewState,
  withCompany,
  withDirector,
} from "./state.js";
import type {
  CompanyResponse,
  DirectorResponse,
  GenderResponse,
  InfluenceResponse,
  InterlocksResponse,
  MetaResponse,
  NetworkResponse,
  PathResponse,
  PeerResponse,
  TenureResponse,
} from "./types.js";

const TAB_LABELS: Record<Tab, string> = {
  network: "Network",
  companies: "Companies",
  influence: "Influence",
  tenure: "Tenure",
  gender: "Gender",
  path: "Path",
};

class App {
  state: ViewState = decodeViewState(location.search);
  generation = 0;

  private readonly tabBar = el("nav", { class: "tab-bar" });
  private readonly filterBar = el("div", { class: "filter-bar" });
  private readonly content = el("main", { class: "content" });
  private readonly detail = el("aside", { class: "detail" });
  private readonly status = el("div", { class: "status" });

  mount(root: HTMLElement): void {
    const header = el("header", {}, [
      el("h1", {}, ["boardgraph explorer"]),
      this.status,
    ]);
    root.append(header, this.tabBar, this.filterBar, el("div", { class: "columns" }, [this.content, this.detail]));
    window.addEventListener("popstate", () => {
      this.state = decodeViewState(location.search);
      this.refresh(false);
    });
    void fetchJson<MetaResponse>("/api/meta")
      .then((meta) => {
        this.status.textContent =
          `snapshot v${meta.version} — ${meta.counts.directors} directors, ` +
          `${meta.counts.companies} companies, ${meta.counts.edges} edges`;
      })
      .catch(() => {
        this.status.textContent = "API unreachable";
      });
    this.refresh(false);
  }

  apply(next: ViewState, push = true): void {
    this.state = next;
    if (push) {
      const query = encodeViewState(next);
      history.pushState(null, "", query ? `?${query}` : location.pathname);
    }
    this.refresh(false);
  }

  private refresh(push: boolean): void {
    if (push) history.replaceState(null, "", `?${encodeViewState(this.state)}`);
    const generation = ++this.generation;
    this.renderChrome();
    if (!this.state.selectedDirector && !this.state.selectedCompany) clear(this.detail);
    for (const url of buildRequests(this.state)) {
      void fetchJson<unknown>(url)
        .then((body) => {
          if (generation === this.generation) this.route(url, body);
        })
        .catch((error: unknown) => {
          if (generation === this.generation) this.routeError(url, error);
        });
    }
    if (this.state.tab === "path" && (this.state.pathFrom === null || this.state.pathTo === null)) {
      const target = this.pathResultHost();
      clear(target);
      target.append(emptyState("Pick two directors to trace their shortest connection."));
    }
  }

  // --- chrome -------------------------------------------------------------

  private renderChrome(): void {
    clear(this.tabBar);
    for (const tab of TABS) {
      const button = el(
        "button",
        { class: tab === this.state.tab ? "tab active" : "tab" },
        [TAB_LABELS[tab]],
      );
      button.addEventListener("click", () => this.apply({ ...this.state, tab }));
      this.tabBar.append(button);
    }
    this.renderFilterBar();
    this.renderContentSkeleton();
  }

  private renderFilterBar(): void {
    clear(this.filterBar);
    const filters = this.state.filters;
    const sector = el("input", {
      type: "text",
      placeholder: "sectors, comma-separated",
      value: filters.sector.join(", "),
    });
    const country = el("input", {
      type: "text",
      placeholder: "countries (ISO-2)",
      value: filters.country.join(", "),
    });
    const leagueBoxes = ["Small", "Medium", "Large", "Mega"].map((name) => {
      const box = el("input", { type: "checkbox" });
      box.checked = filters.league.includes(name);
      return { name, box };
    });
    const genderBoxes = ["Female", "Male"].map((name) => {
      const box = el("input", { type: "checkbox" });
      box.checked = filters.gender.includes(name);
      return { name, box };
    });
    const family = el("select", {}, []);
    for (const [value, label] of [
      ["", "any firm"],
      ["true", "family firms"],
      ["false", "non-family firms"],
    ]) {
      const option = el("option", { value }, [label]);
      family.append(option);
    }
    family.value = filters.family === null ? "" : String(filters.family);

    const colorToggle = el("input", { type: "checkbox" });
    colorToggle.checked = this.state.colorByCompany;

    const applyButton = el("button", { class: "primary" }, ["Apply"]);
    applyButton.addEventListener("click", () => {
      const parseList = (raw: string) =>
        raw
          .split(",")
          .map((token) => token.trim())
          .filter((token) => token.length > 0);
      this.apply({
        ...this.state,
        colorByCompany: colorToggle.checked,
        filters: {
          sector: parseList(sector.value),
          country: parseList(country.value).map((code) => code.toUpperCase()),
          league: leagueBoxes.filter(({ box }) => box.checked).map(({ name }) => name),
          gender: genderBoxes.filter(({ box }) => box.checked).map(({ name }) => name),
          family: family.value === "" ? null : family.value === "true",
          company: this.state.filters.company,
        },
      });
    });
    const clearButton = el("button", {}, ["Clear"]);
    clearButton.addEventListener("click", () =>
      this.apply({
        ...this.state,
        filters: { sector: [], country: [], league: [], gender: [], family: null, company: [] },
      }),
    );

    const group = (label: string, ...nodes: (Node | string)[]) =>
      el("label", { class: "filter-group" }, [label, ...nodes]);
    this.filterBar.append(
      group("Sector", sector),
      group("Country", country),
      el("span", { class: "filter-group" }, [
        "League",
        ...leagueBoxes.flatMap(({ name, box }) => [box as Node, name]),
      ]),
      el("span", { class: "filter-group" }, [
        "Gender",
        ...genderBoxes.flatMap(({ name, box }) => [box as Node, name]),
      ]),
      group("Family", family),
      el("span", { class: "filter-group" }, [colorToggle as Node, "color edges by company"]),
      applyButton,
      clearButton,
    );
  }

  private renderContentSkeleton(): void {
    clear(this.content);
    if (this.state.tab === "path") {
      const from = el("input", { type: "number", placeholder: "from director id" });
      const to = el("input", { type: "number", placeholder: "to director id" });
      if (this.state.pathFrom !== null) from.value = String(this.state.pathFrom);
      if (this.state.pathTo !== null) to.value = String(this.state.pathTo);
      const find = el("button", { class: "primary" }, ["Find path"]);
      find.addEventListener("click", () => {
        const fromId = Number.parseInt(from.value, 10);
        const toId = Number.parseInt(to.value, 10);
        this.apply({
          ...this.state,
          pathFrom: Number.isFinite(fromId) ? fromId : null,
          pathTo: Number.isFinite(toId) ? toId : null,
        });
      });
      this.content.append(
        el("div", { class: "path-controls" }, [from, to, find]),
        el("div", { class: "tab-body", id: "path-result" }),
      );
      return;
    }
    this.content.append(el("div", { class: "tab-body", id: `${this.state.tab}-body` }));
  }

  private tabBody(): HTMLElement {
    return this.content.querySelector(".tab-body") as HTMLElement;
  }

  private pathResultHost(): HTMLElement {
    return (this.content.querySelector("#path-result") as HTMLElement) ?? this.tabBody();
  }

  // --- response routing ------------------------------------------------------

  private route(url: string, body: unknown): void {
    if (url.startsWith("/api/network")) this.showNetwork(body as NetworkResponse);
    else if (url.startsWith("/api/interlocks")) this.showInterlocks(body as InterlocksResponse);
    else if (url.startsWith("/api/influence")) this.showInfluence(body as InfluenceResponse);
    else if (url.startsWith("/api/tenure/summary")) this.showTenure(body as TenureResponse);
    else if (url.startsWith("/api/tenure/peer/")) this.showPeer(body as PeerResponse);
    else if (url.startsWith("/api/gender")) this.showGender(body as GenderResponse);
    else if (url.startsWith("/api/path")) renderPathResult(this.pathResultHost(), body as PathResponse);
    else if (url.startsWith("/api/director/")) this.showDirectorPanel(body as DirectorResponse);
    else if (url.startsWith("/api/company/")) this.showCompanyPanel(body as CompanyResponse);
  }

  private routeError(url: string, error: unknown): void {
    const message = error instanceof Error ? error.message : String(error);
    if (error instanceof ApiError && error.status === 404) {
      if (url.startsWith("/api/director/") || url.startsWith("/api/company/")) {
        clear(this.detail);
        this.detail.append(banner("error", `Not found: ${message}`));
        return;
      }
      if (url.startsWith("/api/path")) {
        const target = this.pathResultHost();
        clear(target);
        target.append(banner("error", message));
        return;
      }
    }
    // non-blocking: keep whatever is currently rendered
    this.content.prepend(banner("error", `Request failed (${message}) — showing previous view.`));
  }

  // --- tab views ----------------------------------------------------------------

  private showNetwork(data: NetworkResponse): void {
    renderNetwork(this.tabBody(), data, this.state.colorByCompany, {
      onDirector: (id) => this.apply(withDirector(this.state, id)),
    });
  }

  private showInterlocks(data: InterlocksResponse): void {
    const body = this.tabBody();
    clear(body);
    if (data.interlocks.length === 0) {
      body.append(emptyState("No company pairs share two or more directors under these filters."));
      return;
    }
    const columns = ["Company A", "Company B", "Shared Directors", "Names"];
    const rows = data.interlocks.map((entry) => [
      entry.company_a_name,
      entry.company_b_name,
      entry.count,
      entry.shared_directors.map((d) => d.name).join("; "),
    ]);
    body.append(
      el("p", {}, ["Boards sharing directors — click a row for the first company's detail."]),
      this.withCsvButton("interlocks.csv", columns, rows,
        renderTable(columns, rows, {
          onRowClick: (index) => this.apply(withCompany(this.state, data.interlocks[index].company_a)),
          rowTitle: "open company detail",
        })),
    );
  }

  private showInfluence(data: InfluenceResponse): void {
    const body = this.tabBody();
    clear(body);
    if (data.countries.length === 0) {
      body.append(emptyState("No influence data matches the current filters."));
      return;
    }
    const columns = ["Country", "Name", "Mean INF", "Seats", "Trend"];
    const csvRows = data.countries.map((c) => [c.code, c.name, c.mean_inf, c.seat_count, ""]);
    const table = renderTable(
      columns,
      data.countries.map((c) => [c.code, c.name, c.mean_inf, c.seat_count, null]),
      {
        onRowClick: (index) => {
          const code = data.countries[index].code;
          const isolated = this.state.filters.country.length === 1 && this.state.filters.country[0] === code;
          this.apply({
            ...this.state,
            filters: { ...this.state.filters, country: isolated ? [] : [code] },
          });
        },
        rowTitle: "click to isolate this country",
      },
    );
    // replace the empty trend cells with sparklines
    const bodyRows = table.querySelectorAll("tbody tr");
    bodyRows.forEach((tr, index) => {
      const cell = tr.lastElementChild as HTMLTableCellElement;
      cell.textContent = "";
      cell.append(sparkline(data.countries[index].trend));
    });
    body.append(
      el("p", {}, ["Aggregated influence by HQ country; click a row to isolate it."]),
      this.withCsvButton("influence_by_country.csv", columns.slice(0, 4), csvRows.map((r) => r.slice(0, 4)), table),
    );
  }

  private showTenure(data: TenureResponse): void {
    const body = this.tabBody();
    clear(body);
    const leagueCols = ["Market Cap League", "Mean Tenure (yr)"];
    const leagueRows = data.per_league.map((row) => [row.league, row.mean_tenure]);
    const cellCols = ["League", "Sector", "Mean Tenure (yr)", "Seats"];
    const cellRows = data.per_league_sector.map((row) => [
      row.league,
      row.sector,
      row.mean_tenure,
      row.seat_count,
    ]);
    const peerInput = el("input", { type: "number", placeholder: "company id" });
    if (this.state.selectedCompany !== null) peerInput.value = String(this.state.selectedCompany);
    const compare = el("button", {}, ["Compare to peers"]);
    compare.addEventListener("click", () => {
      const cid = Number.parseInt(peerInput.value, 10);
      this.apply({ ...this.state, selectedCompany: Number.isFinite(cid) ? cid : null, selectedDirector: null });
    });
    body.append(
      el("h3", {}, ["Average tenure by market cap league"]),
      leagueRows.length ? renderTable(leagueCols, leagueRows) : emptyState("No tenure data matches."),
      el("h3", {}, ["By league and sector"]),
      cellRows.length
        ? this.withCsvButton("tenure_by_league_sector.csv", cellCols, cellRows, renderTable(cellCols, cellRows))
        : emptyState("No cells."),
      el("div", { class: "peer-controls" }, [el("h3", {}, ["Peer comparison"]), peerInput, compare]),
      el("div", { id: "peer-result" }),
    );
  }

  private showPeer(data: PeerResponse): void {
    const host = this.content.querySelector("#peer-result") as HTMLElement | null;
    if (!host) return;
    clear(host);
    host.append(
      renderTable(
        ["Company Mean", "Peer Mean", "Ratio", "Peer Companies"],
        [[data.company_mean, data.peer_mean, data.ratio, data.peer_companies]],
      ),
    );
  }

  private showGender(data: GenderResponse): void {
    const body = this.tabBody();
    clear(body);
    if (data.countries.length === 0) {
      body.append(emptyState("No gendered influence data matches the current filters."));
      return;
    }
    const columns = ["Country", "Name", "Female Seat Share", "Female INF Share", "Power Gap"];
    const rows = data.countries.map((c) => [
      c.code,
      c.name,
      c.seat_share_female,
      c.inf_share_female,
      c.power_gap,
    ]);
    body.append(
      el("p", {}, ["Positive gap: women hold seats but not influence. Sorted by gap."]),
      this.withCsvButton("gender_power.csv", columns, rows, renderTable(columns, rows)),
    );
  }

  // --- drill-through panels --------------------------------------------------------

  private backButton(): HTMLElement {
    const button = el("button", { class: "back" }, ["← Back"]);
    button.addEventListener("click", () => history.back());
    return button;
  }

  private showDirectorPanel(data: DirectorResponse): void {
    const model = directorPanelModel(data);
    clear(this.detail);
    const header = el("dl", { class: "kv" });
    for (const item of model.header) {
      header.append(el("dt", {}, [item.label]), el("dd", {}, [item.value === null ? "" : String(item.value)]));
    }
    this.detail.append(
      this.backButton(),
      el("h2", {}, [model.title]),
      header,
      el("h3", {}, ["Seats"]),
      model.seats.rows.length
        ? renderTable(model.seats.columns, model.seats.rows)
        : emptyState("No profile data — this director only appears in the connections file."),
      el("h3", {}, ["Connections"]),
      model.connections.rows.length
        ? this.withCsvButton(
            `director_${data.director.id}_connections.csv`,
            model.connections.columns,
            model.connections.rows,
            renderTable(model.connections.columns, model.connections.rows),
          )
        : emptyState("No recorded connections."),
    );
  }

  private showCompanyPanel(data: CompanyResponse): void {
    const model = companyPanelModel(data);
    clear(this.detail);
    const header = el("dl", { class: "kv" });
    for (const item of model.header) {
      header.append(el("dt", {}, [item.label]), el("dd", {}, [item.value === null ? "" : String(item.value)]));
    }
    this.detail.append(
      this.backButton(),
      el("h2", {}, [model.title]),
      header,
      el("h3", {}, ["Company Directors"]),
      model.directors.rows.length
        ? this.withCsvButton(
            `company_${data.company.id}_directors.csv`,
            model.directors.columns,
            model.directors.rows,
            renderTable(model.directors.columns, model.directors.rows, {
              onRowClick: (index) => this.apply(withDirector(this.state, data.directors[index].director_id)),
              rowTitle: "open director detail",
            }),
          )
        : emptyState("No seats on record."),
    );
  }

  private withCsvButton(
    filename: string,
    columns: string[],
    rows: (string | number | boolean | null)[][],
    table: HTMLElement,
  ): HTMLElement {
    const button = el("button", { class: "csv" }, ["Download CSV"]);
    button.addEventListener("click", () => downloadCsv(filename, tableToCsv(columns, rows)));
    return el("div", { class: "table-block" }, [button, table]);
  }
}

new App().mount(document.getElementById("app") as HTMLElement);
